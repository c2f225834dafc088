#include "fv1d/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fv1d {

unsigned worker_count() {
    if (const char* env = std::getenv("FV1D_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace fv1d
