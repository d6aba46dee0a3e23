#include <cstdio>
int main() { std::puts("gridforge: subcommands pending"); return 2; }
