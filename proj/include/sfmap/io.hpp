#ifndef SFMAP_IO_HPP
#define SFMAP_IO_HPP

#include <string>

#include "sfmap/core.hpp"
#include "sfmap/solver.hpp"
#include "sfmap/spectral.hpp"
#include "sfmap/worstcase.hpp"

namespace sfmap {

// Non-submodular input; mapped to its own CLI exit code.
class submodularity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problem documents are JSON:
//   {"ground_set": N, "components": [{"kind": "edge_cut", "u": 0, "v": 1,
//    "weight": 1.0}, ...]}
// Unknown fields are rejected. Table values are listed in binary-counter
// order over the sorted support; the lowest support index is the least
// significant bit. Table components with support <= 15 are checked for
// submodularity at parse time.
DecomposableProblem parse_problem(const std::string& text);
std::string serialize_problem(const DecomposableProblem& p);

// Face-spec documents: {"components": [[[0,1],[2,3]], [[1,2],[3,0]]]}
// (per component, the ordered list of blocks).
FacePartitionSpec parse_face_spec(const std::string& text, int n);

// Exact schema: k,dist_ab,primal_obj,cont_gap,best_discrete,discrete_gap,ratio
std::string trace_csv(const SolveTrace& trace);

// Columns: k,dist_to_E,ratio,predicted_cf2
std::string ratio_csv(const RatioSeries& series);

// Flat key-value block, one "key value" line per entry.
std::string format_spectral_report(const SpectralReport& rep);

}  // namespace sfmap

#endif  // SFMAP_IO_HPP
