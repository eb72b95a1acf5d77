// Builds U^{1,2,4}_{1,1,1} over F_16 and prints the main verdicts.
#include <iostream>

#include "scatseq/family.hpp"

int main() {
  using namespace scatseq;
  auto F = make_field(2, 1, 4);
  const FamilyParams P{F, 1, 2, F->one(), F->one(), F->one()};

  const auto s = verify_scattered(P);
  std::cout << "field " << F->descriptor() << "\n";
  std::cout << "P root-free: " << s.p_root_free << ", scattered: " << s.scattered << "\n";
  std::cout << "max plane intersection: " << verify_evasive(P).max_plane_intersection << "\n";

  const RankCode C = family_code(P);
  std::cout << "code [" << C.m() << "x" << C.n() << ", " << C.k() << "], d = " << min_distance(C)
            << ", MRD: " << is_mrd(C) << "\n";

  const auto d = ordinary_dual_params(P);
  std::cout << "dual parameters: I=" << d.params.I << " J=" << d.params.J << "\n";
  return s.scattered ? 0 : 1;
}
