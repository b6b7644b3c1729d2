// Prints least-coarea surface rows over Q, with the systole of each optimal
// algebra. Usage: surface_table [l ...]   (default 0.5 to 3 in steps of 0.25)

#include <cstdlib>
#include <iostream>

#include "sysarith/geodesics.hpp"
#include "sysarith/search.hpp"

int main(int argc, char** argv) {
  using namespace sysarith;
  std::vector<double> bounds;
  for (int i = 1; i < argc; ++i) bounds.push_back(std::atof(argv[i]));
  if (bounds.empty()) {
    for (double l = 0.5; l <= 3.0 + 1e-9; l += 0.25) bounds.push_back(l);
  }

  std::cout << "l      fields  factor    Ram(B)                 systole   field\n";
  for (double l : bounds) {
    const auto r = minimal_algebra_2d(l, false, 4);
    for (const auto& b : r.optimal_sets) {
      std::string ram = "{";
      for (std::size_t i = 0; i < b.ram().size(); ++i) ram += (i ? "," : "") + std::to_string(b.ram()[i]);
      ram += "}";
      const auto s = exact_systole_q(b, LengthMode::paper, l + 2);
      std::printf("%-6.2f %-7zu %-9llu %-22s %-9s %s\n", l, r.excluded_fields.size(),
                  static_cast<unsigned long long>(r.optimal_factor), ram.c_str(),
                  s ? format_fixed(s->length, 6).c_str() : "-",
                  s ? ("Q(sqrt " + std::to_string(s->field.d()) + ")").c_str() : "-");
    }
  }
}
