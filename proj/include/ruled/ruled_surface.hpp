#pragma once

// Ruled surfaces k(t) + v q(t), their dual curves q̃ = q + ε k×q, the moving
// frame {q, h, a} with its structural forms, and the integral invariants of
// closed trajectory surfaces.
//
// Forms are stored per unit surface parameter t (as 1-forms). Densities with
// respect to striction arclength are form / striction_speed.

#include <optional>
#include <vector>

#include "ruled/curve.hpp"
#include "ruled/dual.hpp"
#include "ruled/jet.hpp"
#include "ruled/line.hpp"
#include "ruled/tolerances.hpp"

namespace ruled {

struct RuledSurfaceDef {
  CurveSampler<Vec3> base;
  CurveSampler<Vec3> director;  // unit length
  double period = 2.0 * M_PI;
  bool closed = false;

  Line ruling(double t) const { return Line::from_point_direction(base(t), director(t)); }
  Vec3 point(double t, double v) const { return base(t) + v * director(t); }
};

enum class Closure { automatic, closed, open };

/// Normalizes the director and settles closedness. Throws zero_direction for
/// a vanishing director, mobius when q(T) = −q(0), and not_closed when
/// `Closure::closed` is requested for curves that do not close.
RuledSurfaceDef make_ruled_surface(const CurveSampler<Vec3>& base,
                                   const CurveSampler<Vec3>& raw_director, double period,
                                   Closure closure = Closure::automatic,
                                   const Tolerances& tol = default_tolerances());

/// Uniform parameters covering the domain: N points for closed surfaces,
/// N + 1 (endpoints included) for open ones.
std::vector<double> sample_parameters(const RuledSurfaceDef& s, int sample_count);

Jet<DualVector3> dual_curve_jet(const RuledSurfaceDef& s, double t);
CurveSampler<DualVector3> surface_to_dual_curve(const RuledSurfaceDef& s);

/// Inverse Study map per ruling; the base is the foot point of each line.
RuledSurfaceDef dual_curve_to_surface(const CurveSampler<DualVector3>& q,
                                      Closure closure = Closure::automatic,
                                      const Tolerances& tol = default_tolerances());

/// Dual frame q̃, h̃ = q̃'/‖q̃'‖, ã = q̃ × h̃ with k̄1 = ‖q̃'‖ and k̄2 = ⟨h̃', ã⟩,
/// all as jets in t. Jet orders drop by one per differentiation.
struct DualFrameJet {
  Jet<DualVector3> q, h, a;
  Jet<DualNumber> k1, k2;
};

/// Throws cylindrical when ‖q'(t)‖ < tol.
DualFrameJet dual_frame_jet(const RuledSurfaceDef& s, double t,
                            const Tolerances& tol = default_tolerances());

/// c = k − (⟨q', k'⟩/⟨q', q'⟩) q as a jet. Throws cylindrical.
Jet<Vec3> striction_jet(const RuledSurfaceDef& s, double t,
                        const Tolerances& tol = default_tolerances());

struct StrictionCurve {
  CurveSampler<Vec3> curve;
  bool point_degenerate = false;  // zero speed at every sample (cone)
  bool regular = false;           // nonzero speed at every sample
};

StrictionCurve striction_curve(const RuledSurfaceDef& s, int sample_count = kDefaultSampleCount,
                               const Tolerances& tol = default_tolerances());

/// δ = ⟨k', q × q'⟩/⟨q', q'⟩. Throws cylindrical.
double distribution_parameter(const RuledSurfaceDef& s, double t,
                              const Tolerances& tol = default_tolerances());

/// max |δ| < tol over the samples; cylindrical surfaces count as developable.
bool is_developable(const RuledSurfaceDef& s, double tol, int sample_count = kDefaultSampleCount);

struct FrameSample {
  double t = 0.0;
  Vec3 q, h, a;
  double k1 = 0.0, k2 = 0.0;            // per unit t
  double k1_star = 0.0, k2_star = 0.0;  // dual parts of k̄1, k̄2
  Vec3 striction;
  double striction_speed = 0.0;  // ‖c'(t)‖
  std::optional<double> sigma;   // from c' = ‖c'‖(cos σ q + sin σ a)
  bool sigma_in_range = true;    // −π/2 < σ < π/2
};

enum class ArclengthBasis { striction, spherical };

struct FrameField {
  double period = 0.0;
  std::vector<FrameSample> samples;
  std::vector<double> arclength;  // s(t_i)
  ArclengthBasis basis = ArclengthBasis::striction;
  bool striction_point_degenerate = false;
};

struct FrameOptions {
  int sample_count = kDefaultSampleCount;
  bool require_striction_orientation = false;
  Tolerances tol = default_tolerances();
};

/// Samples the frame. The arclength map runs along the striction line, or
/// along the spherical image of q when the striction line is degenerate.
FrameField moving_frame(const RuledSurfaceDef& s, const FrameOptions& options = {});

/// ℓ = ∮⟨k', q⟩ dt. Throws not_closed.
double pitch(const RuledSurfaceDef& s, const QuadratureSpec& spec = {});

/// The dual Steiner vector. Its moving-frame components are ∮k̄2 along q̃ and
/// ∮k̄1 along ã (none along h̃); `fixed` places it in space at the t = 0 pose.
struct SteinerVector {
  DualNumber along_q;
  DualNumber along_a;
  DualVector3 fixed;
};

SteinerVector steiner(const RuledSurfaceDef& s, const QuadratureSpec& spec = {});

struct AngleOfPitch {
  double route_forms = 0.0;    // −∮⟨h', a⟩ from the real frame
  DualNumber route_steiner;    // −⟨q̃(0), d̃⟩
  double discrepancy = 0.0;
};

/// Throws not_closed or cylindrical.
AngleOfPitch angle_of_pitch(const RuledSurfaceDef& s, const QuadratureSpec& spec = {});

struct DirectorInvariants {
  DualNumber dual_angle_of_pitch;  // λ̄_x = −⟨x̃(0), d̃⟩
  double pitch = 0.0;              // ∮⟨c', x⟩ with c the striction line
  DualNumber spherical_area;       // 2π − λ̄_x
};

struct InvariantReport {
  double pitch = 0.0;
  AngleOfPitch angle;
  DualNumber dual_angle_of_pitch;  // λ − εℓ assembled from the two real routes
  SteinerVector steiner;
  DualVector3 pole;  // ψ̃/‖ψ̃‖ at t = 0
  DirectorInvariants q, h, a;
  Vec3 area_vector_q;  // ∮ q × dq
  int sample_count = kDefaultSampleCount;
};

InvariantReport compute_invariants(const RuledSurfaceDef& s, const QuadratureSpec& spec = {});

/// v = ∮ x × dx. Throws not_closed unless the curve is periodic.
Vec3 area_vector(const CurveSampler<Vec3>& x, const QuadratureSpec& spec = {});

/// f with 2f = ⟨v_x, y⟩.
double projected_area(const CurveSampler<Vec3>& x, const Vec3& y, const QuadratureSpec& spec = {});

/// Real director frame at t (real parts of the dual frame).
struct RealFrame {
  Vec3 q, h, a;
};
RealFrame real_frame(const RuledSurfaceDef& s, double t);

}  // namespace ruled
