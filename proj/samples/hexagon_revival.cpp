// Walk on the unitary Cayley graph of Z6 (the 6-cycle): finds the revival
// between opposite vertices and prints the walk column at that time.

#include <iostream>

#include <cayleywalk/cayleywalk.hpp>

using namespace cayleywalk;

int main()
{
    auto ring = parse_ring_expr("Z6");
    auto dec = idempotents_structured(ring);
    auto labels = crt_permutation(ring);

    std::cout << "spectrum of " << render(ring) << ":";
    for (auto const& e : dec.spectrum.entries) std::cout << ' ' << e.eigenvalue << '^' << e.multiplicity;
    std::cout << '\n';

    auto d = qfr_decide(dec, labels[0], labels[3]);
    if (!d.is_qfr()) {
        std::cout << "no revival between v1 and v4\n";
        return 1;
    }
    auto const& cert = *d.certificate;
    std::cout << "revival v1 -> v4 at t = " << cert.minimal_time.to_string() << '\n'
              << "  alpha = " << cert.alpha.to_string() << '\n'
              << "  beta  = " << cert.beta.to_string() << '\n'
              << "  times: " << cert.times.describe() << '\n';

    auto col = transition_exact_column(dec, cert.minimal_time, labels[0]);
    for (std::size_t k = 0; k < col.size(); ++k) {
        auto const& z = col[labels[k]];
        std::cout << "  H[v" << k + 1 << ", v1] = " << z.to_string() << "  ~ " << z.to_complex() << '\n';
    }
    return certificate_check(ring, d) ? 0 : 1;
}
