#include "dstab/split.hpp"

#include <string>

namespace dstab {

std::size_t choose_cut_coordinate(const Subdomain& sub, const ParameterBox& root_box,
                                  CutScheme scheme) {
    if (sub.pair.m() < 2)
        throw InputError("subdomain with m <= 1 must not be split; its bounds are exact");

    std::size_t best = sub.pair.differing.front();
    double best_score = -kInf;
    for (std::size_t c : sub.pair.differing) {
        const double width = sub.box.width(c);
        const double score =
            scheme == CutScheme::MaximalCut ? width : -(root_box.width(c) / width);
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

std::pair<Subdomain, Subdomain> split_subdomain(const Subdomain& sub, std::size_t coordinate) {
    const ParameterBox& box = sub.box;
    if (coordinate >= box.dimension()) throw InputError("cut coordinate out of range");
    if (box.width(coordinate) <= 0.0)
        throw DomainError("degenerate cut: coordinate " + std::to_string(coordinate) +
                          " has zero width");

    const double mid = 0.5 * (box.lower()[coordinate] + box.upper()[coordinate]);

    Vec lo_upper = box.upper();
    lo_upper[coordinate] = mid;
    Vec hi_lower = box.lower();
    hi_lower[coordinate] = mid;

    Subdomain lower_half{ParameterBox(box.lower(), std::move(lo_upper)),
                         sub.freq,
                         0.0,
                         kInf,
                         {},
                         sub.depth + 1,
                         0};
    Subdomain upper_half{ParameterBox(std::move(hi_lower), box.upper()),
                         sub.freq,
                         0.0,
                         kInf,
                         {},
                         sub.depth + 1,
                         0};
    return {std::move(lower_half), std::move(upper_half)};
}

}  // namespace dstab
