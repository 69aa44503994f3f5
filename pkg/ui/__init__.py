"""
UI Package - Command-line parser construction and subcommand handling
"""
