#include "keypoly/polynomial.hpp"

namespace keypoly {

template class Polynomial<PuiseuxSeries>;
template class Polynomial<RationalFunction>;

}  // namespace keypoly
