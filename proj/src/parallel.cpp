#include "padicdyn/parallel.hpp"

namespace padicdyn {

namespace {
std::atomic<unsigned> configured{0};
}

unsigned default_threads() {
  unsigned n = configured.load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void set_default_threads(unsigned n) { configured = n; }

}  // namespace padicdyn
