#include <cstdio>

int main() {
  std::puts("mdpinfer: CLI wiring pending");
  return 0;
}
