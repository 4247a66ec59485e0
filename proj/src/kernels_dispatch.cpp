#include "chemsim/kernels.hpp"

#include <atomic>
#include <cstdio>
#include <string>

#include "chemsim/common.hpp"

namespace chemsim {

std::string to_hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return std::string(buf);
}

}  // namespace chemsim

namespace chemsim::kernels {

bool avx2_available() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

const Ops* pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return &avx2_ops;
#endif
    return &scalar_ops;
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* active_ptr() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        p = pick_auto();
        g_active.store(p, std::memory_order_release);
    }
    return p;
}

}  // namespace

bool select_backend(std::string_view name) {
    if (name == "auto") {
        g_active.store(pick_auto(), std::memory_order_release);
        return true;
    }
    if (name == "scalar") {
        g_active.store(&scalar_ops, std::memory_order_release);
        return true;
    }
    if (name == "avx2") {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_available()) {
            g_active.store(&avx2_ops, std::memory_order_release);
            return true;
        }
#endif
        return false;
    }
    return false;
}

const char* backend_name() {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_ptr() == &avx2_ops) return "avx2";
#endif
    return "scalar";
}

const Ops& ops() { return *active_ptr(); }

}  // namespace chemsim::kernels
