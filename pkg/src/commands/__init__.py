"""Subcommand modules of the command-line front end."""
