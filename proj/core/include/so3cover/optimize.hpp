#pragma once

// Covering-radius reduction for symmetric orientation sets: Riesz energy
// minimization, ODT smoothing and simplex-wise local refinement, repeated
// from several random starts.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/symmetry.hpp"

namespace so3cover {

struct PipelineConfig {
  double s = 2.0;                ///< Riesz exponent; 0 selects the logarithmic energy
  double cg_tolerance = 1e-8;    ///< stop when |grad| <= cg_tolerance * |grad_0|
  std::size_t cg_max_iters = 2000;
  std::size_t odt_iterations = 50;
  std::size_t refine_passes = 3;
  std::size_t restarts = 10;
  std::uint64_t seed = 1;
  unsigned threads = 0;          ///< 0 = hardware concurrency
};

/// Throws InvalidArgument unless s >= 0 and restarts >= 1.
void validate(const PipelineConfig& config);

struct RieszEvaluation {
  double energy = 0.0;
  /// dE/db for each basis point, projected onto the tangent space at b.
  std::vector<Vec4> gradient;
};

/// Energy over ordered pairs of distinct points of the expanded set.
/// Throws DegenerateGeometry if two points coincide (distance < 1e-12).
RieszEvaluation riesz_energy(const OrientationSet& set, double s);

struct RieszResult {
  std::vector<Quaternion> basis;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

RieszResult minimize_riesz(std::span<const Quaternion> basis, const QuaternionGroup& group,
                           const PipelineConfig& config);

struct OneRing {
  std::uint32_t center = 0;
  std::vector<std::uint32_t> simplices;
  double volume = 0.0;
};

/// Simplices incident to point i with their total spherical volume.
OneRing one_ring(const TriangulationS3& tri, std::uint32_t i);

struct SmoothResult {
  std::vector<Quaternion> basis;
  std::size_t iterations = 0;
  double theta = 0.0;  ///< covering radius of the returned basis, radians
  std::vector<std::string> warnings;
};

/// Moves every basis point to the volume-weighted mean circumcentre of its
/// 1-ring, all from one triangulation per round. Returns the iterate with the
/// smallest covering radius (the input counts as iterate 0).
SmoothResult odt_smooth(std::span<const Quaternion> basis, const QuaternionGroup& group, std::size_t iterations);

struct RefineResult {
  std::vector<Quaternion> basis;
  std::size_t accepted_moves = 0;
  std::size_t reverted_passes = 0;
  double theta = 0.0;
};

/// Nelder-Mead on the Rodrigues-Frank coordinates of the basis points owning
/// each simplex, largest circumradius first.
RefineResult local_refine(std::span<const Quaternion> basis, const QuaternionGroup& group, std::size_t passes);

struct StageRecord {
  std::size_t restart = 0;
  std::string stage;  ///< random, riesz, odt, refine
  double theta_deg = 0.0;
};

using ProgressSink = std::function<void(const StageRecord&)>;

/// Writes "stage=<name> restart=<k> theta_deg=<v>" lines to stderr.
ProgressSink stderr_progress();

struct GenerateResult {
  OrientationSet set;
  CoveringReport report;
  std::size_t best_restart = 0;
  std::vector<StageRecord> trace;  ///< every restart, in restart then stage order
};

/// Basis size for n points on S^3 under group. Throws InvalidArgument with a
/// suggested value when n is not attainable.
std::size_t basis_size_for(std::size_t n, const QuaternionGroup& group);

/// Runs config.restarts independent pipelines and returns the set with the
/// smallest covering radius. n counts points on S^3 (2 per rotation).
GenerateResult generate(std::size_t n, const QuaternionGroup& group, const PipelineConfig& config,
                        const ProgressSink& progress = {});

/// Number of worker threads for a requested count (0 = auto).
unsigned resolve_threads(unsigned requested);

}  // namespace so3cover
