// Complete (-3, -11, _, -7, -31) to fields of open case B and analyze each.
#include <iostream>

#include "twotower/twotower.hpp"

using namespace twotower;

int main()
{
    PartialTuple p{PrimeDiscriminant::from_value(-3), PrimeDiscriminant::from_value(-11), std::nullopt,
                   PrimeDiscriminant::from_value(-7), PrimeDiscriminant::from_value(-31)};
    auto const found = complete_tuple("B", p, 2000, 5);
    for (auto const & k : found) {
        auto const r = analyze(k);
        std::cout << to_string(k) << "  D = " << k.discriminant() << "  case " << r.case_id.tag << "  "
                  << to_string(r.verdict) << '\n';
    }
    return found.front()[2].prime() == 107 ? 0 : 1;
}
