#include "dbulab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace dbu::fft {

namespace {

struct PlanKey {
  std::array<int, kMaxDim> n{};
  int rank = 0;
  int sign = 0;
  bool operator<(const PlanKey& o) const {
    if (rank != o.rank) return rank < o.rank;
    if (sign != o.sign) return sign < o.sign;
    return n < o.n;
  }
};

// One cached plan per shape/direction, created with FFTW_UNALIGNED so it can
// be re-executed on any buffer of the same shape. FFTW_ESTIMATE keeps plan
// selection deterministic across runs.
class PlanCache {
public:
  fftw_plan get(const Grid& grid, int sign) {
    PlanKey key;
    key.rank = grid.dim();
    key.sign = sign;
    for (int a = 0; a < grid.dim(); ++a) key.n[a] = grid.points(a);

    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<std::complex<double>> dummy(grid.size());
    auto* ptr = reinterpret_cast<fftw_complex*>(dummy.data());
    fftw_plan p = fftw_plan_dft(key.rank, key.n.data(), ptr, ptr, sign,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft(const Grid& grid, std::vector<std::complex<double>>& data, int sign) {
  fftw_plan plan = cache().get(grid, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace dbu::fft
