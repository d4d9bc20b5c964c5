#include "fairaudit/kernels.hpp"

#include <atomic>

#include "fairaudit/error.hpp"

namespace fairaudit::kernels {

namespace {

bool cpu_has_avx2() {
#if FAIRAUDIT_HAVE_AVX2_KERNEL
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<Impl> g_impl{Impl::Auto};

Impl resolve(Impl impl) {
    if (impl != Impl::Auto) return impl;
    return cpu_has_avx2() ? Impl::Avx2 : Impl::Scalar;
}

}  // namespace

void select_impl(Impl impl) {
    if (impl == Impl::Avx2 && !cpu_has_avx2())
        throw AuditError(ErrorCode::InvalidConfig, "AVX2 kernel not supported on this CPU");
    g_impl.store(impl, std::memory_order_relaxed);
}

Impl selected_impl() { return resolve(g_impl.load(std::memory_order_relaxed)); }

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::Auto: return "auto";
        case Impl::Scalar: return "scalar";
        case Impl::Avx2: return "avx2";
    }
    return "?";
}

Impl parse_impl(const std::string& name) {
    if (name == "auto") return Impl::Auto;
    if (name == "scalar") return Impl::Scalar;
    if (name == "avx2") return Impl::Avx2;
    throw AuditError(ErrorCode::InvalidConfig, "unknown kernel \"" + name + "\"");
}

std::array<GroupAccum, 2> accumulate(const TableView& view, double cutoff,
                                     const std::uint32_t* weights) {
#if FAIRAUDIT_HAVE_AVX2_KERNEL
    if (selected_impl() == Impl::Avx2) return accumulate_avx2(view, cutoff, weights);
#endif
    return accumulate_scalar(view, cutoff, weights);
}

}  // namespace fairaudit::kernels
