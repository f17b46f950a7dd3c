# Subcommands of the sek3 command line; each module exposes add_parser() and run()
