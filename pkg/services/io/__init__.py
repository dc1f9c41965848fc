# services/io
