#include "fjc/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fjc/observables.hpp"

namespace fjc {

namespace {

double axis_omega(const ModelParams& p, Axis axis) { return axis == Axis::x ? p.omega_x : p.omega_y; }

// Normalises integrator output before wrapping it; records keep the raw norm.
CoupledState snapshot(const Basis& basis, const ComplexVector& psi) {
  const double n = psi.norm();
  return CoupledState(basis, n > 0.0 ? ComplexVector(psi / n) : psi);
}

// (e^{k t} - 1) / k, continuous at k = 0.
cplx expm1_ratio(cplx k, double t) {
  if (std::abs(k * t) < 1e-8) return t * (1.0 + 0.5 * k * t);
  return (std::exp(k * t) - 1.0) / k;
}

}  // namespace

void PropagationSpec::validate() const {
  if (times.empty()) throw std::invalid_argument("times: at least one output time is required");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw std::invalid_argument("times: non-finite entry");
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("times: must be strictly increasing");
  }
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol: must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol: must be positive");
  if (!(sector_weight_floor >= 0.0)) throw std::invalid_argument("sector_weight_floor: must be non-negative");
}

std::vector<double> uniform_grid(double t_start, double t_end, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("samples: need at least 2");
  if (!(t_end > t_start)) throw std::invalid_argument("t_end: must exceed t_start");
  std::vector<double> t(samples);
  const double h = (t_end - t_start) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) t[i] = t_start + h * static_cast<double>(i);
  t.back() = t_end;
  return t;
}

double detuning(const JcModel& model, int n_k, Axis axis, DetuningMode mode) {
  if (n_k < 0 || n_k >= model.basis().mode_dim())
    throw std::out_of_range("n_k=" + std::to_string(n_k) + " outside 0.." + std::to_string(model.basis().mode_dim() - 1));
  if (mode == DetuningMode::exact_energy_difference) return model.energy_gap(axis, n_k);
  const ModelParams& p = model.params();
  const double w = axis_omega(p, axis);
  if (model.kind() == ModelKind::bosonic) return 0.5 * p.omega_a - w;
  return 0.5 * p.omega_a - w * (1.0 - static_cast<double>(n_k) / p.j);
}

double detuning(const ModelParams& p, int n_k, Axis axis, DetuningMode mode) {
  if (n_k < 0 || n_k > 2 * p.j)
    throw std::out_of_range("n_k=" + std::to_string(n_k) + " outside 0.." + std::to_string(2 * p.j));
  const double w = axis_omega(p, axis);
  const double scale = 1.0 - static_cast<double>(n_k) / p.j;
  return mode == DetuningMode::exact_energy_difference ? p.omega_a - w * scale : 0.5 * p.omega_a - w * scale;
}

AmplitudeTriple triple_derivative(double t, const JcModel& model, TripleLabel label, const AmplitudeTriple& amps,
                                  DetuningMode mode) {
  const double hx = model.hop(Axis::x, label.n_x);
  const double hy = model.hop(Axis::y, label.n_y);
  const cplx px = std::polar(1.0, detuning(model, label.n_x, Axis::x, mode) * t);
  const cplx py = std::polar(1.0, detuning(model, label.n_y, Axis::y, mode) * t);
  AmplitudeTriple d;
  d.a = -kI * (hx * px * amps.b + hy * py * amps.c);
  d.b = -kI * hx * std::conj(px) * amps.a;
  d.c = -kI * hy * std::conj(py) * amps.a;
  return d;
}

TripleMap reduced_rhs(double t, const TripleMap& amplitudes, const JcModel& model, DetuningMode mode) {
  TripleMap out;
  for (const auto& [label, amps] : amplitudes) {
    if (!model.basis().contains(label.n_x, label.n_y))
      throw std::out_of_range("triple label (" + std::to_string(label.n_x) + ", " + std::to_string(label.n_y) +
                              ") outside the basis");
    out.emplace(label, triple_derivative(t, model, label, amps, mode));
  }
  return out;
}

ReducedSystem::ReducedSystem(const JcModel& model, DetuningMode mode)
    : model_(model), d_(model.basis().mode_dim()) {
  hop_x_.resize(d_);
  hop_y_.resize(d_);
  det_x_.resize(d_);
  det_y_.resize(d_);
  for (int n = 0; n < d_; ++n) {
    hop_x_[n] = model.hop(Axis::x, n);
    hop_y_[n] = model.hop(Axis::y, n);
    det_x_[n] = detuning(model, n, Axis::x, mode);
    det_y_[n] = detuning(model, n, Axis::y, mode);
  }
}

void ReducedSystem::operator()(double t, const ComplexVector& c, ComplexVector& dc) const {
  const Basis& basis = model_.basis();
  std::vector<cplx> px(d_), py(d_);
  for (int n = 0; n < d_; ++n) {
    px[n] = std::polar(1.0, det_x_[n] * t);
    py[n] = std::polar(1.0, det_y_[n] * t);
  }
  dc.setZero(c.size());
  for (int nx = 0; nx < d_; ++nx) {
    for (int ny = 0; ny < d_; ++ny) {
      const Index ia = basis.index(nx, ny, Atom::excited);
      const cplx a = c[ia];
      cplx da = 0.0;
      if (nx + 1 < d_) {
        const Index ib = basis.index(nx + 1, ny, Atom::ground);
        da += hop_x_[nx] * px[nx] * c[ib];
        dc[ib] += -kI * hop_x_[nx] * std::conj(px[nx]) * a;
      }
      if (ny + 1 < d_) {
        const Index ic = basis.index(nx, ny + 1, Atom::ground);
        da += hop_y_[ny] * py[ny] * c[ic];
        dc[ic] += -kI * hop_y_[ny] * std::conj(py[ny]) * a;
      }
      dc[ia] += -kI * da;
    }
  }
}

Trajectory propagate_reduced(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec) {
  spec.validate();
  const Basis& basis = model.basis();
  if (!(initial.basis() == basis)) throw std::invalid_argument("initial: basis does not match the model");
  const Index n = basis.size();
  RealVector e0(n);
  for (Index k = 0; k < n; ++k) e0[k] = model.free_energy(basis.label(k));

  const double t0 = spec.times.front();
  ComplexVector c0 = initial.amplitudes();
  for (Index k = 0; k < n; ++k) c0[k] *= std::polar(1.0, e0[k] * t0);

  Trajectory traj;
  traj.method = "reduced_ode";
  traj.times = spec.times;
  traj.records.reserve(spec.times.size());
  ComplexVector psi(n);
  const ReducedSystem system(model, spec.detuning);
  IntegratorOptions opts;
  opts.rel_tol = spec.rel_tol;
  opts.abs_tol = spec.abs_tol;
  integrate_dopri5(
      [&system](double t, const ComplexVector& y, ComplexVector& dy) { system(t, y, dy); }, c0, spec.times, opts,
      [&](std::size_t, double t, const ComplexVector& c) {
        for (Index k = 0; k < n; ++k) psi[k] = c[k] * std::polar(1.0, -e0[k] * t);
        traj.records.push_back(expectations(basis, psi, t));
        if (spec.keep_states) traj.states.push_back(snapshot(basis, psi));
      });
  return traj;
}

Trajectory propagate_reduced(const CoupledState& initial, const ModelParams& params, const PropagationSpec& spec) {
  return propagate_reduced(initial, JcModel::finite(params), spec);
}

TripleTrajectory propagate_triples(const TripleMap& initial, const JcModel& model, const PropagationSpec& spec) {
  spec.validate();
  std::vector<TripleLabel> labels;
  ComplexVector y0(3 * static_cast<Index>(initial.size()));
  Index k = 0;
  for (const auto& [label, amps] : initial) {
    if (!model.basis().contains(label.n_x, label.n_y))
      throw std::invalid_argument("initial: triple label outside the basis");
    labels.push_back(label);
    y0[k++] = amps.a;
    y0[k++] = amps.b;
    y0[k++] = amps.c;
  }
  const DetuningMode mode = spec.detuning;
  auto rhs = [&](double t, const ComplexVector& y, ComplexVector& dy) {
    dy.resize(y.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const Index o = 3 * static_cast<Index>(i);
      const AmplitudeTriple d = triple_derivative(t, model, labels[i], {y[o], y[o + 1], y[o + 2]}, mode);
      dy[o] = d.a;
      dy[o + 1] = d.b;
      dy[o + 2] = d.c;
    }
  };
  TripleTrajectory out;
  out.times = spec.times;
  IntegratorOptions opts;
  opts.rel_tol = spec.rel_tol;
  opts.abs_tol = spec.abs_tol;
  integrate_dopri5(rhs, y0, spec.times, opts, [&](std::size_t, double, const ComplexVector& y) {
    TripleMap m;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const Index o = 3 * static_cast<Index>(i);
      m.emplace(labels[i], AmplitudeTriple{y[o], y[o + 1], y[o + 2]});
    }
    out.samples.push_back(std::move(m));
  });
  return out;
}

ResonantClosedForm::ResonantClosedForm(const JcModel& model, int n, AmplitudeTriple initial, DetuningMode mode)
    : n_(n), init_(initial) {
  const ModelParams& p = model.params();
  if (p.omega_x != p.omega_y) throw std::invalid_argument("omega_y: closed form needs omega_x == omega_y");
  if (p.g_x != p.g_y) throw std::invalid_argument("g_y: closed form needs g_x == g_y");
  if (!model.basis().contains(n, n)) throw std::invalid_argument("n: outside the basis");
  hop_ = model.hop(Axis::x, n);
  detuning_ = fjc::detuning(model, n, Axis::x, mode);
  omega_ = std::sqrt(detuning_ * detuning_ + 8.0 * hop_ * hop_);
  roots_ = {kI * 0.5 * (detuning_ + omega_), kI * 0.5 * (detuning_ - omega_)};
  const cplx a0 = init_.a;
  const cplx da0 = -kI * hop_ * (init_.b + init_.c);
  if (omega_ == 0.0) {
    weights_ = {a0, 0.0};
    return;
  }
  // c+ + c- = A(0), l+ c+ + l- c- = A'(0)
  weights_[0] = (da0 - roots_[1] * a0) / (roots_[0] - roots_[1]);
  weights_[1] = a0 - weights_[0];
}

ResonantClosedForm::ResonantClosedForm(const ModelParams& params, int n, AmplitudeTriple initial, DetuningMode mode)
    : ResonantClosedForm(JcModel::finite(params), n, initial, mode) {}

AmplitudeTriple ResonantClosedForm::operator()(double t) const {
  AmplitudeTriple s;
  cplx integral = 0.0;
  for (int k = 0; k < 2; ++k) {
    s.a += weights_[k] * std::exp(roots_[k] * t);
    integral += weights_[k] * expm1_ratio(roots_[k] - kI * detuning_, t);
  }
  s.b = init_.b - kI * hop_ * integral;
  s.c = init_.c - kI * hop_ * integral;
  return s;
}

namespace {

Eigen::Matrix3d triple_generator(double hx, double hy, double dx, double dy) {
  Eigen::Matrix3d m;
  m << 0.0, hx, hy, hx, dx, 0.0, hy, 0.0, dy;
  return m;
}

}  // namespace

std::array<cplx, 3> nonresonant_characteristic_roots(const JcModel& model, int n_x, int n_y, DetuningMode mode) {
  if (!model.basis().contains(n_x, n_y)) throw std::invalid_argument("n_x/n_y: outside the basis");
  // lambda = i mu, mu an eigenvalue of the real symmetric triple generator.
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
      triple_generator(model.hop(Axis::x, n_x), model.hop(Axis::y, n_y), detuning(model, n_x, Axis::x, mode),
                       detuning(model, n_y, Axis::y, mode)),
      Eigen::EigenvaluesOnly);
  return {kI * es.eigenvalues()[0], kI * es.eigenvalues()[1], kI * es.eigenvalues()[2]};
}

std::array<cplx, 3> nonresonant_characteristic_roots(const ModelParams& params, int n_x, int n_y, DetuningMode mode) {
  return nonresonant_characteristic_roots(JcModel::finite(params), n_x, n_y, mode);
}

RootSolution::RootSolution(const JcModel& model, TripleLabel label, AmplitudeTriple initial, DetuningMode mode)
    : init_(initial),
      hop_x_(model.hop(Axis::x, label.n_x)),
      hop_y_(model.hop(Axis::y, label.n_y)),
      det_x_(detuning(model, label.n_x, Axis::x, mode)),
      det_y_(detuning(model, label.n_y, Axis::y, mode)) {
  roots_ = nonresonant_characteristic_roots(model, label.n_x, label.n_y, mode);
  const cplx a0 = init_.a;
  const cplx da0 = -kI * (hop_x_ * init_.b + hop_y_ * init_.c);
  const cplx dda0 = hop_x_ * det_x_ * init_.b + hop_y_ * det_y_ * init_.c - (hop_x_ * hop_x_ + hop_y_ * hop_y_) * a0;
  Eigen::Matrix3cd v;
  Eigen::Vector3cd rhs(a0, da0, dda0);
  for (int k = 0; k < 3; ++k) {
    v(0, k) = 1.0;
    v(1, k) = roots_[k];
    v(2, k) = roots_[k] * roots_[k];
  }
  const Eigen::FullPivLU<Eigen::Matrix3cd> lu(v);
  if (!lu.isInvertible()) throw std::domain_error("RootSolution: degenerate characteristic roots");
  const Eigen::Vector3cd w = lu.solve(rhs);
  for (int k = 0; k < 3; ++k) weights_[k] = w[k];
}

AmplitudeTriple RootSolution::operator()(double t) const {
  AmplitudeTriple s;
  cplx ix = 0.0, iy = 0.0;
  for (int k = 0; k < 3; ++k) {
    s.a += weights_[k] * std::exp(roots_[k] * t);
    ix += weights_[k] * expm1_ratio(roots_[k] - kI * det_x_, t);
    iy += weights_[k] * expm1_ratio(roots_[k] - kI * det_y_, t);
  }
  s.b = init_.b - kI * hop_x_ * ix;
  s.c = init_.c - kI * hop_y_ * iy;
  return s;
}

Trajectory propagate_exact(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec) {
  spec.validate();
  if (!(initial.basis() == model.basis())) throw std::invalid_argument("initial: basis does not match the model");
  SectorPropagatorOptions opts;
  opts.weight_floor = spec.sector_weight_floor;
  SectorPropagator prop(model, initial.amplitudes(), opts);
  Trajectory traj;
  traj.method = "exact_sector";
  traj.times = spec.times;
  traj.records.reserve(spec.times.size());
  const double t0 = spec.times.front();
  for (double t : spec.times) {
    if (t == t0) {
      traj.records.push_back(expectations(initial, t));
      if (spec.keep_states) traj.states.push_back(initial);
      continue;
    }
    prop.set_time(t - t0);
    ExpectationRecord r = prop.expectations();
    r.t = t;
    traj.records.push_back(r);
    if (spec.keep_states) traj.states.push_back(snapshot(model.basis(), prop.state()));
  }
  return traj;
}

Trajectory propagate_exact(const CoupledState& initial, const ModelParams& params, const PropagationSpec& spec) {
  return propagate_exact(initial, JcModel::finite(params), spec);
}

Trajectory propagate_closed_form(const JcModel& model, int n, const PropagationSpec& spec) {
  spec.validate();
  const ResonantClosedForm sol(model, n, {1.0, 0.0, 0.0}, spec.detuning);
  const Basis& basis = model.basis();
  const Index ia = basis.index(n, n, Atom::excited);
  const bool has_b = basis.contains(n + 1, n);
  const Index ib = has_b ? basis.index(n + 1, n, Atom::ground) : 0;
  const Index ic = has_b ? basis.index(n, n + 1, Atom::ground) : 0;
  Trajectory traj;
  traj.method = "resonant_closed_form";
  traj.times = spec.times;
  const double t0 = spec.times.front();
  for (double t : spec.times) {
    const AmplitudeTriple s = sol(t - t0);
    const double pa = std::norm(s.a), pb = std::norm(s.b), pc = std::norm(s.c);
    ExpectationRecord r;
    r.t = t;
    r.n_x = pa * n + pb * (n + 1) + pc * n;
    r.n_y = pa * n + pb * n + pc * (n + 1);
    r.sigma_z = pa - pb - pc;
    r.norm = pa + pb + pc;
    r.N_total = r.n_x + r.n_y + pa;
    traj.records.push_back(r);
    if (spec.keep_states) {
      ComplexVector psi = ComplexVector::Zero(basis.size());
      const double dt = t - t0;
      psi[ia] = s.a * std::polar(1.0, -model.free_energy(n, n, Atom::excited) * dt);
      if (has_b) {
        psi[ib] = s.b * std::polar(1.0, -model.free_energy(n + 1, n, Atom::ground) * dt);
        psi[ic] = s.c * std::polar(1.0, -model.free_energy(n, n + 1, Atom::ground) * dt);
      }
      traj.states.push_back(snapshot(basis, psi));
    }
  }
  return traj;
}

Trajectory propagate(const CoupledState& initial, const JcModel& model, const PropagationSpec& spec) {
  switch (spec.method) {
    case Method::reduced_ode:
      return propagate_reduced(initial, model, spec);
    case Method::exact_sector:
      return propagate_exact(initial, model, spec);
    case Method::resonant_closed_form: {
      const Basis& basis = model.basis();
      const ComplexVector& a = initial.amplitudes();
      Index hot = 0;
      a.cwiseAbs().maxCoeff(&hot);
      const BasisLabel l = basis.label(hot);
      if (l.atom != Atom::excited || l.n_x != l.n_y || std::abs(std::abs(a[hot]) - 1.0) > 1e-12)
        throw std::invalid_argument("initial: closed form needs the basis state |n, n, e>");
      return propagate_closed_form(model, l.n_x, spec);
    }
  }
  throw std::logic_error("propagate: unknown method");
}

double interaction_frame_check(const ModelParams& params, double t, DetuningMode mode) {
  if (params.j > 16) throw std::invalid_argument("j: interaction_frame_check is limited to j <= 16");
  const HamiltonianSet h = build_finite_hamiltonian(params);
  const ComplexMatrix h0 = HamiltonianSet::dense(h.free);
  const ComplexMatrix v = HamiltonianSet::dense(h.interaction);
  const ComplexMatrix off = h0 - ComplexMatrix(h0.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 0.0) throw std::logic_error("interaction_frame_check: free part is not diagonal");
  const ComplexVector phase = (kI * t * h0.diagonal()).array().exp();
  const ComplexMatrix vi = phase.asDiagonal() * v * phase.conjugate().asDiagonal();

  const JcModel& model = h.model;
  const Basis& basis = model.basis();
  ComplexMatrix reduced = ComplexMatrix::Zero(basis.size(), basis.size());
  const int d = basis.mode_dim();
  for (int nx = 0; nx < d; ++nx) {
    for (int ny = 0; ny < d; ++ny) {
      const Index ia = basis.index(nx, ny, Atom::excited);
      if (nx + 1 < d) {
        const Index ib = basis.index(nx + 1, ny, Atom::ground);
        const cplx p = model.hop(Axis::x, nx) * std::polar(1.0, detuning(model, nx, Axis::x, mode) * t);
        reduced(ia, ib) = p;
        reduced(ib, ia) = std::conj(p);
      }
      if (ny + 1 < d) {
        const Index ic = basis.index(nx, ny + 1, Atom::ground);
        const cplx p = model.hop(Axis::y, ny) * std::polar(1.0, detuning(model, ny, Axis::y, mode) * t);
        reduced(ia, ic) = p;
        reduced(ic, ia) = std::conj(p);
      }
    }
  }
  return (vi - reduced).cwiseAbs().maxCoeff();
}

}  // namespace fjc
