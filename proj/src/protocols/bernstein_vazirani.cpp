#include <bit>
#include <cmath>
#include <string>

#include "qgames/errors.hpp"
#include "qgames/protocols.hpp"

namespace qgames {

namespace {

void validate(const BVInstance& inst) {
  if (inst.n < 1 || inst.n > 10) throw PreconditionError("bv: n must lie in [1, 10]");
  if (inst.a >= (std::uint64_t{1} << inst.n))
    throw PreconditionError("bv: a = " + std::to_string(inst.a) + " does not fit in " + std::to_string(inst.n) + " bits");
}

}  // namespace

BVOracle::BVOracle(BVInstance inst) : inst_(inst) { validate(inst_); }

std::vector<Complex> BVOracle::operator()(const std::vector<Complex>& state) {
  if (state.size() != (std::size_t{1} << inst_.n)) throw DimensionError("bv oracle: wrong register size");
  ++calls_;
  std::vector<Complex> out(state);
  for (std::size_t x = 0; x < out.size(); ++x)
    if (std::popcount(inst_.a & x) % 2 == 1) out[x] = -out[x];
  return out;
}

BVResult bv_run(const BVInstance& inst) {
  BVOracle oracle(inst);
  const ComplexMatrix w = walsh_power(inst.n);
  std::vector<Complex> zero(std::size_t{1} << inst.n);
  zero[0] = 1.0;
  BVResult r;
  r.superposition = w * std::span<const Complex>(zero);
  const auto final_state = w * std::span<const Complex>(oracle(r.superposition));
  for (std::size_t x = 0; x < final_state.size(); ++x)
    if (std::abs(final_state[x]) > r.amplitude) {
      r.amplitude = std::abs(final_state[x]);
      r.guess = x;
    }
  r.oracle_calls = oracle.calls();
  return r;
}

std::uint64_t bv_guess(const BVInstance& inst) { return bv_run(inst).guess; }

}  // namespace qgames
