namespace kx { }
