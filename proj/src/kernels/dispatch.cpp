#include "ree/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ree::kernels {

namespace {

const Backend* pick() {
    const char* env = std::getenv("REE_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_backend();
    if (env != nullptr && std::strcmp(env, "avx2") == 0) {
        const Backend* v = avx2_backend();
        if (v != nullptr) return v;
        // Requested backend unavailable; fall through to the default.
    }
    const Backend* v = avx2_backend();
    return v != nullptr ? v : &scalar_backend();
}

}  // namespace

const Backend& active() {
    static const Backend* chosen = pick();
    return *chosen;
}

}  // namespace ree::kernels
