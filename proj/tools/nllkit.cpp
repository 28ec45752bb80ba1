#include <cstdio>

int main() {
  std::puts("nllkit: subcommands not wired yet");
  return 2;
}
