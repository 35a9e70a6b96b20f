#include <cstdio>
int main() { std::puts("antikz: not wired up yet"); return 0; }
