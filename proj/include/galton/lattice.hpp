#pragma once

#include <compare>
#include <vector>

#include "galton/errors.hpp"
#include "galton/params.hpp"

namespace galton {

/// Atom site on the triangular board: step n >= 1, horizontal coordinate x
/// with |x| <= n and x == n (mod 2). Step n holds n+1 atoms.
struct Site {
    int n = 0;
    int x = 0;
    auto operator<=>(const Site&) const = default;
};

bool is_valid_site(Site s);

// All sites of an N-step board, sorted by step then coordinate.
std::vector<Site> sites(int N);

// Sites (n', x') with n' < n and |n - n'| = |x - x'|: the atoms upstream on
// the two waveguides passing through s. Sorted, valid sites only.
std::vector<Site> predecessors(Site s);

// 1/sqrt(2) for the edge sites |x| == n, which sit on the source-fed
// waveguide behind the 50:50 initialization beamsplitter; 0 otherwise.
double source_coefficient(Site s);

// true iff dst is causally reachable from src through the feedforward
// network: dst.n >= src.n and |dst.x - src.x| <= dst.n - src.n.
bool in_light_cone(Site src, Site dst);

Site mirror(Site s); // x -> -x

enum class Dir { L, R };

const char* dir_name(Dir d);
Dir flip(Dir d);

/// Output detector behind step N: horizontal coordinate x of the step-N atom
/// it sits after, and the exit direction. |x| <= N, x == N (mod 2);
/// 2N+2 detectors in total.
struct DetectorId {
    int x = 0;
    Dir d = Dir::L;
    auto operator<=>(const DetectorId&) const = default;
};

bool is_valid_detector(DetectorId det, int N);

// All detectors, sorted by x with L before R. This is also the index order
// used by pattern matrices.
std::vector<DetectorId> detectors(int N);

DetectorId mirror(DetectorId det); // x -> -x, L <-> R

/// Expansion of a detector's output operator into the input-boundary field
/// plus the chain of atoms coupled to its waveguide. boundary_coeff is
/// 1/sqrt(2) on the two detectors fed by the source waveguide (m == 0),
/// zero elsewhere; each atom enters with weight -i*sqrt(gamma), the -i being
/// folded into the amplitude convention downstream.
struct DetectorExpansion {
    int waveguide_m = 0; // even waveguide label
    double boundary_coeff = 0.0;
    std::vector<Site> atoms; // ordered by step
};

DetectorExpansion detector_expansion(DetectorId det, int N);

} // namespace galton
