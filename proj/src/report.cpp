#include "keypoly/report.hpp"

#include "keypoly/errors.hpp"

namespace keypoly {

void require_all(const std::vector<Clause>& cs, const std::string& context) {
  for (const auto& c : cs)
    if (c.applicable && !c.pass)
      throw AssertionFailure(context + ": clause " + c.id + " failed" + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

}  // namespace keypoly
