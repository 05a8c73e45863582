"""Bundled .geo construction scripts."""
