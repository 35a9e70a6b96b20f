#include <cstdio>
int main() { std::puts("antikz"); return 0; }
