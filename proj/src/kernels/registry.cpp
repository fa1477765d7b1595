// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include "backends.hpp"
#include "cqd/kernels.hpp"

namespace cqd::kernels {

namespace {

std::vector<Backend> build_backends() {
    std::vector<Backend> b;
    b.push_back({"scalar", 1, &integrate_block_scalar});
    b.push_back({"generic4", 4, &integrate_block_generic4});
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) {
        b.push_back({"avx2", 4, &integrate_block_avx2});
    }
    if (__builtin_cpu_supports("avx512f")) {
        b.push_back({"avx512", 8, &integrate_block_avx512});
    }
#endif
#if defined(__aarch64__)
    b.push_back({"neon", 2, &integrate_block_neon});
#endif
    return b;
}

}  // namespace

const std::vector<Backend>& available_backends() {
    static const std::vector<Backend> backends = build_backends();
    return backends;
}

const Backend& select_backend(const std::string& name) {
    const auto& all = available_backends();
    if (name == "auto") {
        for (const char* preferred : {"avx512", "avx2", "neon"}) {
            for (const auto& b : all) {
                if (b.name == preferred) return b;
            }
        }
        return all.front();  // scalar
    }
    for (const auto& b : all) {
        if (b.name == name) return b;
    }
    throw std::domain_error("unknown or unsupported kernel: " + name);
}

}  // namespace cqd::kernels
