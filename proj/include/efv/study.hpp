// Grid-refinement verification studies: discretization error norms, observed
// orders of accuracy, and CSV / plot-data reporting.
#ifndef EFV_STUDY_HPP
#define EFV_STUDY_HPP

#include <string>
#include <utility>
#include <vector>

#include "efv/mesh.hpp"
#include "efv/mms.hpp"
#include "efv/residual.hpp"
#include "efv/solver.hpp"
#include "efv/types.hpp"

namespace efv {

/// Unweighted nodal L1 error per primitive variable:
/// (1/N) sum_j |w_j - w_exact(x_j)|.
Vec5 compute_l1_error(const std::vector<Vec5>& states, const ManufacturedField& field,
                      const MeshTopology& mesh);

/// log(e_coarse/e_fine) / log(h_coarse/h_fine); throws std::invalid_argument
/// on non-positive inputs.
double observed_order(double e_coarse, double e_fine, double h_coarse, double h_fine);

struct StudySpec {
  std::vector<int> n_list{16, 24, 32, 48};
  // Scheme/flux combinations; the default is the verification matrix of one
  // second-order baseline plus all third-order variants.
  std::vector<std::pair<SchemeVariant, FluxFunction>> matrix{
      {SchemeVariant::second, FluxFunction::roe},
      {SchemeVariant::third_fr, FluxFunction::roe},
      {SchemeVariant::third_fc, FluxFunction::roe},
      {SchemeVariant::third_fc, FluxFunction::hllc},
      {SchemeVariant::third_fc, FluxFunction::ldfss},
  };
  std::uint64_t seed = 0;
  double perturbation_fraction = 0.25;
  GridSpec::Splitting splitting = GridSpec::Splitting::randomized;
  double kappa = 0.5;
  ManufacturedField field;
  GasModel gas;
  SolverConfig solver;
  std::string out_dir;       // empty: no files written
  bool export_meshes = false;

  void validate() const;  // throws std::invalid_argument
};

struct RunResult {
  SchemeVariant scheme;
  FluxFunction flux;
  int n = 0;
  double h = 0.0;          // in-plane spacing 1/(n-1) scaled by the domain
  Vec5 error = Vec5::Zero();
  // Observed order per variable between this grid and the previous one of the
  // same scheme/flux; NaN on the first grid.
  Vec5 order = Vec5::Zero();
  int iterations = 0;
  double seconds = 0.0;
  bool converged = false;
};

struct ConvergenceReport {
  std::vector<RunResult> runs;
  bool all_converged = true;
};

/// Runs the full matrix. Grids are rebuilt per n with a perturbation pattern
/// drawn from the spec seed (mixed with n), and the same grid is shared by
/// all scheme/flux combinations at that n. Writes study.csv and per-scheme
/// log-log data files when out_dir is set. Solver failures are recorded, not
/// thrown.
ConvergenceReport run_study(const StudySpec& spec);

/// The CSV emitted by run_study; exposed for the CLI single-run mode.
void write_study_csv(const StudySpec& spec, const ConvergenceReport& report,
                     const std::string& path);

}  // namespace efv

#endif  // EFV_STUDY_HPP
