#include "ricsol/tensor.hpp"

#include <stdexcept>

namespace ricsol {

std::size_t valence_rank(Valence v) {
  switch (v) {
    case Valence::Scalar: return 0;
    case Valence::Vector:
    case Valence::OneForm: return 1;
    case Valence::Sym2:
    case Valence::Form2:
    case Valence::Covariant2:
    case Valence::Endo: return 2;
    case Valence::Tensor12: return 3;
    case Valence::Curvature:
    case Valence::Covariant4: return 4;
  }
  return 0;
}

const char* valence_name(Valence v) {
  switch (v) {
    case Valence::Scalar: return "scalar";
    case Valence::Vector: return "vector";
    case Valence::OneForm: return "oneform";
    case Valence::Sym2: return "sym2";
    case Valence::Form2: return "form2";
    case Valence::Covariant2: return "covariant2";
    case Valence::Endo: return "endo";
    case Valence::Tensor12: return "tensor12";
    case Valence::Curvature: return "curvature";
    case Valence::Covariant4: return "covariant4";
  }
  return "?";
}

namespace {

std::size_t component_count(Valence v, std::size_t n) {
  std::size_t count = 1;
  for (std::size_t r = 0; r < valence_rank(v); ++r) count *= n;
  return count;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

TensorField::TensorField(Valence valence, std::size_t dimension, std::vector<Expr> components)
    : valence_(valence), dim_(dimension), components_(std::move(components)) {
  require(components_.size() == component_count(valence_, dim_), "tensor component count does not match valence");
}

TensorField TensorField::zero(Valence valence, std::size_t dimension) {
  return TensorField(valence, dimension, std::vector<Expr>(component_count(valence, dimension)));
}

TensorField scalar_field(std::size_t dimension, Expr f) { return TensorField(Valence::Scalar, dimension, {std::move(f)}); }

TensorField vector_field(std::vector<Expr> components) {
  const std::size_t n = components.size();
  return TensorField(Valence::Vector, n, std::move(components));
}

TensorField one_form(std::vector<Expr> components) {
  const std::size_t n = components.size();
  return TensorField(Valence::OneForm, n, std::move(components));
}

TensorField coordinate_field(std::size_t dimension, std::size_t i) {
  std::vector<Expr> c(dimension);
  c[i] = Expr::number(1.0);
  return vector_field(std::move(c));
}

TensorField add(const TensorField& a, const TensorField& b, double s) {
  require(a.valence() == b.valence() && a.dimension() == b.dimension(), "add: mismatched tensors");
  std::vector<Expr> out(a.components().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.components()[i] + s * b.components()[i];
  return TensorField(a.valence(), a.dimension(), std::move(out));
}

TensorField scale(const TensorField& a, const Expr& s) {
  std::vector<Expr> out(a.components().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.components()[i];
  return TensorField(a.valence(), a.dimension(), std::move(out));
}

// ---------------------------------------------------------------------------
// Connection and curvature

ChristoffelSymbols::ChristoffelSymbols(std::size_t dimension, std::vector<Expr> components)
    : dim_(dimension), gamma_(std::move(components)) {
  require(gamma_.size() == dim_ * dim_ * dim_, "Christoffel symbols need n^3 components");
}

namespace {

ChristoffelSymbols christoffel_with(const MetricField& g, DerivativeCache& d) {
  const std::size_t n = g.dimension();
  const auto& coords = g.chart().coordinates();
  // dg[(l*n + i)*n + j] = d_l g_ij
  std::vector<Expr> dg(n * n * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        dg[(l * n + i) * n + j] = d(g.at(i, j), coords[l]);
        dg[(l * n + j) * n + i] = dg[(l * n + i) * n + j];
      }
    }
  }
  auto dmetric = [&](std::size_t l, std::size_t i, std::size_t j) -> const Expr& { return dg[(l * n + i) * n + j]; };

  std::vector<Expr> gamma(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // First kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
      std::vector<Expr> first(n);
      for (std::size_t l = 0; l < n; ++l) first[l] = dmetric(i, j, l) + dmetric(j, i, l) - dmetric(l, i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Expr acc;
        for (std::size_t l = 0; l < n; ++l) acc = acc + g.inverse(k, l) * first[l];
        acc = Expr::number(0.5) * acc;
        gamma[(k * n + i) * n + j] = acc;
        gamma[(k * n + j) * n + i] = acc;
      }
    }
  }
  return ChristoffelSymbols(n, std::move(gamma));
}

TensorField riemann_with(const MetricField& g, const ChristoffelSymbols& G, DerivativeCache& d) {
  const std::size_t n = g.dimension();
  const auto& coords = g.chart().coordinates();
  std::vector<Expr> r(n * n * n * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Expr acc = d(G.at(l, j, k), coords[i]) - d(G.at(l, i, k), coords[j]);
          for (std::size_t m = 0; m < n; ++m) {
            acc = acc + (G.at(l, i, m) * G.at(m, j, k) - G.at(l, j, m) * G.at(m, i, k));
          }
          r[((l * n + i) * n + j) * n + k] = acc;
        }
      }
    }
  }
  return TensorField(Valence::Curvature, n, std::move(r));
}

}  // namespace

ChristoffelSymbols christoffel(const MetricField& g) {
  DerivativeCache d;
  return christoffel_with(g, d);
}

TensorField riemann(const MetricField& g, const ChristoffelSymbols& gamma) {
  DerivativeCache d;
  return riemann_with(g, gamma, d);
}

TensorField riemann(const MetricField& g) {
  DerivativeCache d;
  const auto gamma = christoffel_with(g, d);
  return riemann_with(g, gamma, d);
}

TensorField lower_riemann(const MetricField& g, const TensorField& r) {
  require(r.valence() == Valence::Curvature, "lower_riemann expects a curvature field");
  const std::size_t n = g.dimension();
  std::vector<Expr> out(n * n * n * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Expr acc;
          for (std::size_t m = 0; m < n; ++m) acc = acc + g.at(l, m) * r.at(m, i, j, k);
          out[((l * n + i) * n + j) * n + k] = acc;
        }
      }
    }
  }
  return TensorField(Valence::Covariant4, n, std::move(out));
}

TensorField ricci(const MetricField& g, const TensorField& r) {
  require(r.valence() == Valence::Curvature, "ricci expects a curvature field");
  const std::size_t n = g.dimension();
  // W^l_j = g^ab R^l_jab, then Ric_jk = W^l_j g_lk.
  std::vector<Expr> w(n * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr acc;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) acc = acc + g.inverse(a, b) * r.at(l, j, a, b);
      }
      w[l * n + j] = acc;
    }
  }
  std::vector<Expr> ric(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Expr acc;
      for (std::size_t l = 0; l < n; ++l) acc = acc + w[l * n + j] * g.at(l, k);
      ric[j * n + k] = acc;
    }
  }
  return TensorField(Valence::Sym2, n, std::move(ric));
}

TensorField ricci(const MetricField& g) { return ricci(g, riemann(g)); }

namespace {

struct Derived {
  ChristoffelSymbols gamma;
  TensorField riemann;
  TensorField ricci;
};

Derived derive(const MetricField& g) {
  DerivativeCache d;
  ChristoffelSymbols gamma = christoffel_with(g, d);
  TensorField r = riemann_with(g, gamma, d);
  TensorField ric = ricci(g, r);
  return {std::move(gamma), std::move(r), std::move(ric)};
}

}  // namespace

Geometry::Geometry(MetricField metric) : Geometry(std::move(metric), 0) {}

Geometry::Geometry(MetricField metric, int)
    : metric_(std::move(metric)),
      gamma_(metric_.dimension(), std::vector<Expr>(metric_.dimension() * metric_.dimension() * metric_.dimension())),
      riemann_(TensorField::zero(Valence::Curvature, metric_.dimension())),
      ricci_(TensorField::zero(Valence::Sym2, metric_.dimension())) {
  Derived d = derive(metric_);
  gamma_ = std::move(d.gamma);
  riemann_ = std::move(d.riemann);
  ricci_ = std::move(d.ricci);
}

TensorField Geometry::metric_tensor() const {
  return TensorField(Valence::Sym2, dimension(), std::vector<Expr>(metric_.components().begin(), metric_.components().end()));
}

// ---------------------------------------------------------------------------
// Differential operators

Expr directional_derivative(const Chart& chart, const TensorField& x, const Expr& f) {
  require(x.valence() == Valence::Vector, "directional_derivative expects a vector field");
  Expr acc;
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    if (x.at(i).is_zero()) continue;
    acc = acc + x.at(i) * differentiate(f, chart.coordinate(i));
  }
  return acc;
}

TensorField differential(const Chart& chart, const Expr& f) {
  std::vector<Expr> c(chart.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = differentiate(f, chart.coordinate(i));
  return one_form(std::move(c));
}

TensorField gradient(const Geometry& geo, const Expr& f) {
  return musical_sharp(geo.metric(), differential(geo.chart(), f));
}

TensorField hessian(const Geometry& geo, const Expr& f) {
  const std::size_t n = geo.dimension();
  const auto& coords = geo.chart().coordinates();
  const auto& G = geo.christoffel();
  DerivativeCache d;
  std::vector<Expr> df(n);
  for (std::size_t k = 0; k < n; ++k) df[k] = d(f, coords[k]);
  std::vector<Expr> h(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Expr acc = d(df[j], coords[i]);
      for (std::size_t k = 0; k < n; ++k) acc = acc - G.at(k, i, j) * df[k];
      h[i * n + j] = acc;
      h[j * n + i] = acc;
    }
  }
  return TensorField(Valence::Sym2, n, std::move(h));
}

TensorField musical_flat(const MetricField& g, const TensorField& x) {
  require(x.valence() == Valence::Vector, "musical_flat expects a vector field");
  const std::size_t n = g.dimension();
  std::vector<Expr> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr acc;
    for (std::size_t j = 0; j < n; ++j) acc = acc + g.at(i, j) * x.at(j);
    c[i] = acc;
  }
  return one_form(std::move(c));
}

TensorField musical_sharp(const MetricField& g, const TensorField& a) {
  require(a.valence() == Valence::OneForm, "musical_sharp expects a one-form");
  const std::size_t n = g.dimension();
  std::vector<Expr> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr acc;
    for (std::size_t j = 0; j < n; ++j) acc = acc + g.inverse(i, j) * a.at(j);
    c[i] = acc;
  }
  return vector_field(std::move(c));
}

TensorField covariant_derivative(const Geometry& geo, const TensorField& x, const TensorField& y) {
  require(x.valence() == Valence::Vector && y.valence() == Valence::Vector,
          "covariant_derivative expects vector fields");
  const std::size_t n = geo.dimension();
  const auto& G = geo.christoffel();
  std::vector<Expr> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    Expr acc = directional_derivative(geo.chart(), x, y.at(k));
    for (std::size_t i = 0; i < n; ++i) {
      if (x.at(i).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y.at(j).is_zero()) continue;
        acc = acc + G.at(k, i, j) * x.at(i) * y.at(j);
      }
    }
    c[k] = acc;
  }
  return vector_field(std::move(c));
}

TensorField covariant_derivative_oneform(const Geometry& geo, const TensorField& a) {
  require(a.valence() == Valence::OneForm, "covariant_derivative_oneform expects a one-form");
  const std::size_t n = geo.dimension();
  const auto& G = geo.christoffel();
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr acc = differentiate(a.at(j), geo.chart().coordinate(i));
      for (std::size_t k = 0; k < n; ++k) acc = acc - G.at(k, i, j) * a.at(k);
      c[i * n + j] = acc;
    }
  }
  return TensorField(Valence::Covariant2, n, std::move(c));
}

TensorField covariant_derivative_endo(const Geometry& geo, const TensorField& a) {
  require(a.valence() == Valence::Endo, "covariant_derivative_endo expects an endomorphism field");
  const std::size_t n = geo.dimension();
  const auto& G = geo.christoffel();
  std::vector<Expr> c(n * n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Expr acc = differentiate(a.at(k, j), geo.chart().coordinate(i));
        for (std::size_t m = 0; m < n; ++m) {
          acc = acc + G.at(k, i, m) * a.at(m, j) - G.at(m, i, j) * a.at(k, m);
        }
        c[(k * n + i) * n + j] = acc;
      }
    }
  }
  return TensorField(Valence::Tensor12, n, std::move(c));
}

TensorField lie_bracket(const Chart& chart, const TensorField& x, const TensorField& y) {
  require(x.valence() == Valence::Vector && y.valence() == Valence::Vector, "lie_bracket expects vector fields");
  const std::size_t n = chart.dimension();
  std::vector<Expr> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = directional_derivative(chart, x, y.at(k)) - directional_derivative(chart, y, x.at(k));
  }
  return vector_field(std::move(c));
}

TensorField lie_derivative_sym2(const Chart& chart, const TensorField& t, const TensorField& x) {
  require(t.rank() == 2 && t.valence() != Valence::Endo, "lie_derivative_sym2 expects a (0,2) field");
  require(x.valence() == Valence::Vector, "lie_derivative_sym2 expects a vector field");
  const std::size_t n = chart.dimension();
  DerivativeCache d;
  std::vector<Expr> dx(n * n);  // [i][k] = d_i X^k
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) dx[i * n + k] = d(x.at(k), chart.coordinate(i));
  }
  const bool symmetric = t.valence() == Valence::Sym2;
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      Expr acc;
      for (std::size_t k = 0; k < n; ++k) {
        if (!x.at(k).is_zero()) acc = acc + x.at(k) * d(t.at(i, j), chart.coordinate(k));
        acc = acc + t.at(k, j) * dx[i * n + k] + t.at(i, k) * dx[j * n + k];
      }
      c[i * n + j] = acc;
      if (symmetric) c[j * n + i] = acc;
    }
  }
  return TensorField(t.valence(), n, std::move(c));
}

TensorField sym_product(const TensorField& a, const TensorField& b) {
  require(a.valence() == Valence::OneForm && b.valence() == Valence::OneForm, "sym_product expects one-forms");
  const std::size_t n = a.dimension();
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Expr v = Expr::number(0.5) * (a.at(i) * b.at(j) + a.at(j) * b.at(i));
      c[i * n + j] = v;
      c[j * n + i] = v;
    }
  }
  return TensorField(Valence::Sym2, n, std::move(c));
}

// ---------------------------------------------------------------------------
// Pointwise algebra

Expr contract(const TensorField& form, const TensorField& x) {
  require(form.valence() == Valence::OneForm && x.valence() == Valence::Vector, "contract expects (one-form, vector)");
  Expr acc;
  for (std::size_t i = 0; i < x.dimension(); ++i) acc = acc + form.at(i) * x.at(i);
  return acc;
}

Expr bilinear(const TensorField& t, const TensorField& x, const TensorField& y) {
  require(t.rank() == 2 && t.valence() != Valence::Endo, "bilinear expects a (0,2) field");
  Expr acc;
  const std::size_t n = t.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) acc = acc + t.at(i, j) * x.at(i) * y.at(j);
  }
  return acc;
}

Expr inner(const MetricField& g, const TensorField& x, const TensorField& y) {
  Expr acc;
  const std::size_t n = g.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) acc = acc + g.at(i, j) * x.at(i) * y.at(j);
  }
  return acc;
}

TensorField apply(const TensorField& endo, const TensorField& x) {
  require(endo.valence() == Valence::Endo && x.valence() == Valence::Vector, "apply expects (endo, vector)");
  const std::size_t n = x.dimension();
  std::vector<Expr> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr acc;
    for (std::size_t j = 0; j < n; ++j) acc = acc + endo.at(i, j) * x.at(j);
    c[i] = acc;
  }
  return vector_field(std::move(c));
}

TensorField compose(const TensorField& a, const TensorField& b) {
  require(a.valence() == Valence::Endo && b.valence() == Valence::Endo, "compose expects endomorphisms");
  const std::size_t n = a.dimension();
  std::vector<Expr> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr acc;
      for (std::size_t m = 0; m < n; ++m) acc = acc + a.at(i, m) * b.at(m, j);
      c[i * n + j] = acc;
    }
  }
  return TensorField(Valence::Endo, n, std::move(c));
}

TensorField curvature_apply(const TensorField& r, const TensorField& x, const TensorField& y, const TensorField& z) {
  require(r.valence() == Valence::Curvature, "curvature_apply expects a curvature field");
  const std::size_t n = r.dimension();
  std::vector<Expr> c(n);
  for (std::size_t l = 0; l < n; ++l) {
    Expr acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (x.at(i).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y.at(j).is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (z.at(k).is_zero()) continue;
          acc = acc + r.at(l, i, j, k) * x.at(i) * y.at(j) * z.at(k);
        }
      }
    }
    c[l] = acc;
  }
  return vector_field(std::move(c));
}

}  // namespace ricsol
