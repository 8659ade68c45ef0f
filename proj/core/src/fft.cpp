#include "wvl/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace wvl {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    int n = 0;
};

// One scratch buffer + plan pair per line length, per thread. Plans are
// created in-place on the thread's own aligned buffer; the FFTW planner is
// not thread-safe, so creation is serialized.
PlanPair& plans_for(int n) {
    thread_local std::map<int, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    static std::mutex planner_mutex;
    PlanPair p;
    p.n = n;
    p.buf = fftw_alloc_complex(static_cast<size_t>(n));
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    return cache.emplace(n, p).first->second;
}

} // namespace

void dft_line(const std::complex<double>* in, std::complex<double>* out, int n, bool forward) {
    PlanPair& p = plans_for(n);
    std::memcpy(static_cast<void*>(p.buf), static_cast<const void*>(in),
                sizeof(fftw_complex) * static_cast<size_t>(n));
    fftw_execute(forward ? p.fwd : p.bwd);
    std::memcpy(static_cast<void*>(out), static_cast<const void*>(p.buf),
                sizeof(fftw_complex) * static_cast<size_t>(n));
}

} // namespace wvl
