#include "fairaudit/kernels.hpp"

#include "striped.hpp"

namespace fairaudit::kernels {

std::array<GroupAccum, 2> accumulate_scalar(const TableView& view, double cutoff,
                                            const std::uint32_t* weights) {
    detail::StripedAccum acc;
    detail::accumulate_rows(view, cutoff, weights, 0, view.n, acc);
    return acc.combine();
}

}  // namespace fairaudit::kernels
