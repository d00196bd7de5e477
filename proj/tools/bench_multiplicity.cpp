// Benchmark for the multiplicity-counting hot loop: a translated Heisenberg
// box with about a million elements must group in seconds. Run by hand; not
// part of the test suite.

#include <chrono>
#include <iostream>

#include "cosetlab/sparse_vector.hpp"

using namespace cosetlab;

int main(int argc, char** argv) {
  long n = argc > 1 ? std::stol(argv[1]) : 13;  // (2n+1)^2 (2n^2+1) ~ 2.5e5 .. 1e6
  auto t0 = std::chrono::steady_clock::now();
  FiniteSet f = generate(FolnerGen::heis_box(), n, 4000000);
  auto t1 = std::chrono::steady_clock::now();
  GroupElement s = make_heis(3, -7, 11);
  Rat nsq = avg_norm_sq_delta_translated(f, s, Subgroup::heis_center());
  auto t2 = std::chrono::steady_clock::now();

  auto ms = [](auto a, auto b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
  };
  std::cout << "|F| = " << f.size() << "\n"
            << "generate: " << ms(t0, t1) << " ms\n"
            << "translated multiplicity grouping: " << ms(t1, t2) << " ms\n"
            << "norm^2 = " << rat_str(nsq) << "\n";
  return 0;
}
