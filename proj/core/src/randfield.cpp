#include "lpp/randfield.hpp"

// Everything in randfield is constexpr/inline; this unit pins the header's
// compile-time checks to the library build.
namespace lpp {

static_assert(splitmix64_finalize(0) == 0);
static_assert(unit_open_closed(0) == 0x1.0p-53);
static_assert(unit_open_closed(~std::uint64_t{0}) == 1.0);

}  // namespace lpp
