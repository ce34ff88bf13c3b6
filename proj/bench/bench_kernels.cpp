// Timing table for the OpenMP kernels against their serial reference loops.
// `--quick` shrinks every workload to a smoke-test size.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gll/almost_mathieu.hpp"
#include "gll/exec.hpp"
#include "gll/fiber.hpp"
#include "gll/gabor.hpp"
#include "gll/propagation.hpp"

using gll::Exec;

namespace {

Eigen::VectorXi vi(std::initializer_list<int> v) {
  Eigen::VectorXi out(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) out(i++) = x;
  return out;
}

double run_ms(const std::function<void(Exec)>& body, Exec exec) {
  const auto start = std::chrono::steady_clock::now();
  body(exec);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

std::shared_ptr<const gll::SymbolSet> bench_set() {
  gll::Lattice gamma(Eigen::MatrixXd::Identity(1, 1));
  gll::Lattice lambda((Eigen::MatrixXd(1, 1) << 1.0 / 0.61).finished());
  std::vector<Eigen::VectorXi> shifts = {vi({-1}), vi({0}), vi({2})};
  std::vector<gll::Symbol> symbols = {
      gll::Symbol::fourier({{vi({0}), {1.1, 0.3}}, {vi({1}), {0.2, 0.0}}}),
      gll::Symbol::fourier({{vi({0}), {0.0, 1.0}}, {vi({-2}), {0.15, 0.1}}}),
      gll::Symbol::fourier({{vi({0}), {0.9, -0.4}}}),
  };
  return std::make_shared<gll::SymbolSet>(gamma, lambda, shifts, symbols);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  struct Row {
    std::string name;
    std::function<void(Exec)> body;
  };
  std::vector<Row> rows;

  {
    auto set = bench_set();
    std::vector<Eigen::VectorXd> xs;
    for (int i = 0; i < (quick ? 4 : 10); ++i)
      xs.push_back((Eigen::VectorXd(1) << 0.05 + 0.09 * i).finished());
    std::vector<int> rs = quick ? std::vector<int>{10, 20} : std::vector<int>{40, 80, 120};
    rows.push_back({"kernel-sweep", [set, xs, rs](Exec e) {
                      gll::kernel_sweep(set, xs, rs, 1e-10, e);
                    }});
  }
  {
    gll::PropagationRule rule({vi({0, 0}), vi({1, 0}), vi({0, 1})}, vi({1, 0}));
    std::vector<int> ns;
    for (int n = 8; n <= (quick ? 32 : 96); n += 8) ns.push_back(n);
    rows.push_back({"growth-sweep", [rule, ns](Exec e) {
                      gll::growth_exponents(rule, ns, 0, e);
                    }});
  }
  {
    const int q_max = quick ? 8 : 18;
    rows.push_back({"butterfly", [q_max](Exec e) {
                      gll::butterfly(1.0, q_max, 256, e);
                    }});
  }
  {
    // Hermite windows integrate numerically, so the gram is honest work.
    gll::Window w = gll::Window::hermite(2);
    std::vector<gll::PhasePoint> atoms;
    const int side = quick ? 3 : 5;
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        gll::PhasePoint p{Eigen::VectorXd(1), Eigen::VectorXd(1)};
        p.x << 0.8 * i;
        p.y << 0.8 * j;
        atoms.push_back(p);
      }
    rows.push_back({"gram-assembly", [w, atoms](Exec e) {
                      gll::gram_matrix(w, atoms, 1e-11, e);
                    }});
  }

  std::printf("%-14s %12s %12s %8s\n", "kernel", "serial(ms)", "parallel(ms)", "ratio");
  for (const auto& row : rows) {
    row.body(Exec::serial);  // warm caches before timing
    const double serial = run_ms(row.body, Exec::serial);
    const double parallel = run_ms(row.body, Exec::parallel);
    std::printf("%-14s %12.2f %12.2f %8.2f\n", row.name.c_str(), serial, parallel,
                parallel > 0.0 ? serial / parallel : 0.0);
  }
  return 0;
}
