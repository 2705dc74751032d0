// Placeholder main while the library is under construction; replaced by the
// full CLI in this directory.
int main() { return 0; }
