// D = -25355 = (-11)(+5)(+461): infinite 2-tower from a real base field with |Cl_2| = 16.
#include <iostream>

#include "twotower/report_json.hpp"
#include "twotower/twotower.hpp"

using namespace twotower;

int main()
{
    auto const k = prime_disc_factorization(-25355);
    auto const r = analyze(k);
    std::cout << to_json(r).dump(2) << '\n';
    if (!r.certificate)
        return 1;
    std::cout << "replay: " << (replay(*r.certificate, k) ? "ok" : "MISMATCH") << '\n';
    return r.verdict == Verdict::InfiniteProven && replay(*r.certificate, k) ? 0 : 1;
}
