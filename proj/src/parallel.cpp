#include "quadlog/parallel.hpp"

#include <cstdlib>
#include <string>

namespace quadlog {

std::size_t thread_count() {
    if (const char* env = std::getenv("QUADLOG_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 0) return v == 0 ? 1 : static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace quadlog
