#pragma once

#include <memory>
#include <string>

#include "keypoly/puiseux.hpp"

namespace keypoly {

// A point theta in some completion of K, known through exact approximants
// theta_n in K with theta - theta_n = O(t^error_order(n)).
class SeriesOracle {
 public:
  virtual ~SeriesOracle() = default;
  virtual unsigned characteristic() const = 0;
  virtual PuiseuxSeries approximant(unsigned n) const = 0;
  // +inf when approximant(n) is theta itself.
  virtual ExtValue error_order(unsigned n) const = 0;
  virtual std::string describe() const = 0;
};

// theta = sum_{i >= 1} t^(-1/p^i), a root of x^p - x - t^(-1) outside K.
class ArtinSchreierOracle final : public SeriesOracle {
 public:
  explicit ArtinSchreierOracle(unsigned p);
  unsigned characteristic() const override { return p_; }
  PuiseuxSeries approximant(unsigned n) const override;
  ExtValue error_order(unsigned n) const override;
  std::string describe() const override;

 private:
  unsigned p_;
};

// A point of K itself.
class ExactSeriesOracle final : public SeriesOracle {
 public:
  explicit ExactSeriesOracle(PuiseuxSeries theta);
  unsigned characteristic() const override { return theta_.characteristic(); }
  PuiseuxSeries approximant(unsigned) const override { return theta_; }
  ExtValue error_order(unsigned) const override { return ExtValue::pos_inf(); }
  std::string describe() const override { return "series " + theta_.str(); }

 private:
  PuiseuxSeries theta_;
};

// Approximation depth for evaluation valuations: KEYPOLY_PRECISION_DEPTH if
// set, else 24.
unsigned default_precision_depth();

}  // namespace keypoly
