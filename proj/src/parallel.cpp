#include "slewind/parallel.hpp"

#include <mutex>

namespace slewind {

namespace {
int g_max_threads = 0;  // 0 = uninitialized

int default_threads() {
    if (const char* env = std::getenv("WINDING_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}
}  // namespace

int max_threads() {
    if (g_max_threads <= 0) g_max_threads = default_threads();
    return g_max_threads;
}

void set_max_threads(int n) { g_max_threads = n > 0 ? n : 0; }

void parallel_for(long n, const std::function<void(long)>& fn) {
    int nt = std::min<long>(max_threads(), n);
    if (nt <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lk(err_mu);
                    if (!err) err = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace slewind
