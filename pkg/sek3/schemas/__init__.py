# Records for everything read from or written to files
