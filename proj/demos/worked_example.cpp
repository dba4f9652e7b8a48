// K = Q(sqrt((-7)(-3)(-8)(+29)(+5))) over F = Q(sqrt 145): the splitting bound falls one short.
#include <iostream>

#include "twotower/twotower.hpp"

using namespace twotower;

int main()
{
    auto const k = QuadFieldSpec::from_values({-7, -3, -8, 29, 5});
    auto const f = QuadFieldSpec::from_values({29, 5});

    std::cout << "K: D = " << k.discriminant() << ", case " << classify_open_case(k).tag << '\n';
    std::cout << "Redei matrix:\n" << to_string(redei_matrix(k));
    std::cout << "F: Cl_2 = " << to_string(wide_class_group(f.discriminant())) << '\n';

    Int sum = 0;
    for (Int p : {7, 3, 2}) {
        auto const w = splitting_witness(f, p);
        sum += w.count;
        std::cout << "  p = " << p << ": " << to_string(w.split) << ", 2-part " << w.order_2part << ", " << w.count
                  << " primes in L\n";
    }
    Int const bound = kl_rank_lower_bound(k, f);
    Int const need = gs_required(2 * cl2_order(f));
    std::cout << "d2 Cl(KL) >= " << sum << " - 1 = " << bound << ", Golod-Shafarevich needs " << need << '\n';

    auto const r = analyze(k);
    std::cout << "verdict: " << to_string(r.verdict) << '\n';
    return r.verdict == Verdict::Open && bound == 7 && need == 8 ? 0 : 1;
}
