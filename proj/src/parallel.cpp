#include "furst/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace furst {
namespace {

unsigned initial_threads() noexcept {
    if (const char* env = std::getenv("FURST_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0) {
                return static_cast<unsigned>(n);
            }
        } catch (...) {
        }
    }
    return 1;
}

std::atomic<unsigned>& threads() {
    static std::atomic<unsigned> value{initial_threads()};
    return value;
}

}  // namespace

unsigned thread_count() noexcept { return threads().load(); }

void set_thread_count(unsigned n) noexcept { threads().store(n == 0 ? 1 : n); }

}  // namespace furst
