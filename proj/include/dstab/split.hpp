#pragma once

#include <cstdint>
#include <utility>

#include "dstab/bounds.hpp"
#include "dstab/parameter_box.hpp"
#include "dstab/region.hpp"

namespace dstab {

enum class CutScheme { MaximalCut, FairCut };

/// Branch-and-bound work item: a sub-box of the root uncertainty box with its
/// cached lower bound and critical pair. Scaling always happens about the
/// ROOT box's nominal point, so bounds of different subdomains refer to the
/// same homotopy and stay comparable; the sub-box's own nominal field is just
/// its center.
struct Subdomain {
    ParameterBox box;
    GridPoint freq;
    double k_l = 0.0;
    double k_u = kInf;
    CriticalPair pair;
    int depth = 0;
    std::uint64_t seq = 0;  // insertion stamp; FIFO tie-break among equal k_l
};

/// Coordinate to cut, restricted to the differing set of the critical pair.
///   MaximalCut: widest current edge.
///   FairCut:    least-subdivided edge; minimizes original width over current
///               width, which counts the midpoint cuts applied so far.
/// Ties break to the smallest coordinate index.
std::size_t choose_cut_coordinate(const Subdomain& sub, const ParameterBox& root_box,
                                  CutScheme scheme);

/// Midpoint cut along `coordinate`. Children cover the parent with disjoint
/// interiors; caches are reset and depth is incremented. The pair's vertices
/// land in different children whenever `coordinate` is in the differing set.
std::pair<Subdomain, Subdomain> split_subdomain(const Subdomain& sub, std::size_t coordinate);

}  // namespace dstab
