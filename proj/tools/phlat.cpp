#include <cstdio>
int main(){ std::puts("phlat"); return 0; }
