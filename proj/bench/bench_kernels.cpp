// Serial vs OpenMP timings for the Schur complement assembly and the
// brute-force CSP optimum.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "psdeg/instances.hpp"
#include "psdeg/kernels.hpp"
#include "psdeg/lasserre.hpp"

using namespace psdeg;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

std::vector<Eigen::MatrixXd> random_spd(const std::vector<std::size_t>& sizes, unsigned seed) {
  std::srand(seed);
  std::vector<Eigen::MatrixXd> W;
  for (auto s : sizes) {
    const Eigen::MatrixXd R = Eigen::MatrixXd::Random(s, s);
    W.push_back(R * R.transpose() + Eigen::MatrixXd::Identity(s, s));
  }
  return W;
}

}  // namespace

int main(int argc, char** argv) {
  const int jobs = argc > 1 ? std::atoi(argv[1]) : 4;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("jobs=%d reps=%d\n", jobs, reps);

  for (std::size_t n : {6, 8, 10}) {
    const ConstraintSystem Q = gen_knapsack(n, static_cast<std::int64_t>(n));
    LasserreOptions lo;
    const LasserreSdp L = build_sdp(Q, 2, lo);
    const auto W = random_spd(L.sdp.block_sizes, 7);
    const std::size_t m = L.sdp.num_rows();
    Eigen::MatrixXd Ms(m, m), Mp(m, m);
    const double ts = seconds([&] { kernels::schur_serial(L.sdp.A, W, Ms); }, reps);
    const double tp = seconds([&] { kernels::schur_parallel(L.sdp.A, W, Mp, jobs); }, reps);
    std::printf("schur  n=%-2zu rows=%-5zu serial %.4fs  parallel %.4fs  speedup %.2f  maxdiff %.2e\n",
                n, m, ts, tp, ts / tp, (Ms - Mp).cwiseAbs().maxCoeff());
  }

  for (std::size_t n : {16, 20, 22}) {
    const CspInstance inst = gen_random_csp(n, 4 * n, 3, CspMode::xor_parity, 1);
    std::vector<kernels::PackedConstraint> packed;
    for (const auto& c : inst.constraints) {
      kernels::PackedConstraint pc;
      for (auto v : c.vars) pc.vars |= std::uint64_t{1} << (v - 1);
      pc.rhs = c.rhs;
      packed.push_back(pc);
    }
    std::uint32_t a = 0, b = 0;
    const double ts = seconds([&] { a = kernels::max_satisfied_serial(packed, n); }, reps);
    const double tp = seconds([&] { b = kernels::max_satisfied_parallel(packed, n, jobs); }, reps);
    std::printf("brute  n=%-2zu m=%-3zu serial %.4fs  parallel %.4fs  speedup %.2f  agree %s\n", n,
                packed.size(), ts, tp, ts / tp, a == b ? "yes" : "NO");
  }
  return 0;
}
