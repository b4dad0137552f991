#pragma once

#include "reps.hpp"

namespace galileq {

// (R,E) cells. q is the table column (row block of R), q2 the table row.
// Entries are polynomial strings in mu nu sigma alpha lambda omega kappa.
struct TableCell {
  QIndex q, q2;
  std::vector<std::vector<std::string>> R;  // empty: not existing
  std::vector<std::vector<std::string>> E;
  // each constraint lists alternative substitutions "var=expr"; one must hold
  std::vector<std::vector<std::string>> constraints;
  std::string note;
};

namespace tables {

inline const QIndex q311{3, 1, 1}, q221{2, 2, 1}, q210{2, 1, 0}, q211{2, 1, 1}, q200{2, 0, 0}, q121{1, 2, 1},
    q110{1, 1, 0}, q111{1, 1, 1}, q100{1, 0, 0}, q010{0, 1, 0};

using S2 = std::vector<std::vector<std::string>>;

inline const std::vector<TableCell>& cells() {
  static const std::vector<TableCell> c = [] {
    std::vector<TableCell> v;
    auto add = [&](QIndex a, QIndex b, S2 R, S2 E, std::vector<std::vector<std::string>> cons = {},
                   std::string note = "") { v.push_back({a, b, std::move(R), std::move(E), std::move(cons), std::move(note)}); };
    // Table 2, column (3,1,1)
    add(q311, q311, {{"mu", "nu", "sigma"}, {"nu", "alpha", "lambda"}, {"sigma", "lambda", "0"}}, {{"alpha-2*sigma"}},
        {{"mu=0", "nu=0"}, {"lambda=0", "alpha=sigma"}});
    add(q311, q221, {{"mu", "nu"}, {"sigma", "alpha"}, {"omega", "0"}}, {{"kappa", "omega-alpha"}});
    add(q311, q210, {{"mu", "nu"}, {"sigma", "alpha"}, {"0", "omega"}}, {{"kappa"}});
    add(q311, q211, {{"mu", "nu"}, {"sigma", "alpha"}, {"omega", "0"}}, {{"omega-alpha"}});
    add(q311, q200, {{"mu", "nu"}, {"sigma", "alpha"}, {"alpha", "0"}}, {});
    add(q311, q121, {{"mu"}, {"nu"}, {"alpha"}}, {{"omega", "alpha"}});
    add(q311, q110, {{"mu"}, {"nu"}, {"alpha"}}, {{"alpha"}});
    add(q311, q111, {{"0"}, {"nu"}, {"alpha"}}, {{"omega"}});
    add(q311, q100, {{"mu"}, {"alpha"}, {"0"}}, {});
    add(q311, q010, {}, {{"alpha"}});
    // column (2,2,1)
    add(q221, q311, {{"mu", "sigma", "omega"}, {"nu", "alpha", "0"}}, {{"kappa"}, {"omega-alpha"}});
    add(q221, q221, {{"mu", "nu"}, {"nu", "kappa"}}, {{"sigma", "0"}, {"0", "omega"}}, {{"mu=0", "nu=0"}});
    add(q221, q210, {{"mu", "nu"}, {"sigma", "omega"}}, {{"kappa"}, {"omega"}});
    add(q221, q211, {{"mu", "nu"}, {"0", "omega"}}, {{"alpha"}, {"sigma"}});
    add(q221, q200, {{"mu", "nu"}, {"omega", "0"}}, {});
    add(q221, q121, {{"kappa"}, {"sigma"}}, {{"mu", "nu"}, {"omega", "0"}});
    add(q221, q110, {{"kappa"}, {"sigma"}}, {{"mu"}, {"0"}});
    add(q221, q111, {{"kappa"}, {"sigma"}}, {{"mu"}, {"nu"}});
    add(q221, q100, {{"kappa"}, {"sigma"}}, {});
    add(q221, q010, {}, {{"kappa"}, {"sigma"}});
    // column (2,1,0)
    add(q210, q311, {{"mu", "sigma", "0"}, {"nu", "alpha", "omega"}}, {{"kappa"}});
    add(q210, q221, {{"mu", "sigma"}, {"nu", "omega"}}, {{"kappa", "omega"}});
    add(q210, q210, {{"mu", "nu"}, {"nu", "kappa"}}, {{"sigma"}}, {{"mu=0", "nu=0"}});
    add(q210, q211, {{"mu", "sigma"}, {"0", "nu"}}, {{"kappa"}});
    add(q210, q200, {{"mu", "nu"}, {"sigma", "0"}}, {});
    add(q210, q121, {{"mu"}, {"nu"}}, {{"sigma", "0"}});
    add(q210, q110, {{"mu"}, {"nu"}}, {{"sigma"}});
    add(q210, q111, {{"mu"}, {"nu"}}, {{"0"}});
    add(q210, q100, {{"kappa"}, {"sigma"}}, {});
    add(q210, q010, {}, {{"alpha"}});
    // Table 3, column (2,1,1)
    add(q211, q211, {{"mu", "nu"}, {"nu", "0"}}, {{"sigma"}}, {{"mu=0", "nu=0"}});
    add(q211, q200, {{"omega", "nu"}, {"mu", "0"}}, {});
    add(q211, q121, {{"mu"}, {"nu"}}, {{"sigma", "alpha"}}, {}, "printed transposed");
    add(q211, q110, {{"mu"}, {"nu"}}, {{"sigma"}});
    add(q211, q111, {{"mu"}, {"nu"}}, {{"sigma"}});
    add(q211, q100, {{"kappa"}, {"sigma"}}, {});
    add(q211, q010, {}, {{"alpha"}});
    // column (2,0,0)
    add(q200, q211, {{"omega", "nu"}, {"mu", "0"}}, {});
    add(q200, q200, {{"mu", "nu"}, {"nu", "0"}}, {}, {{"mu=0", "nu=0"}});
    add(q200, q121, {{"mu"}, {"nu"}}, {}, {}, "printed transposed");
    add(q200, q110, {{"mu"}, {"0"}}, {}, {}, "printed as a scalar; upper placement");
    add(q200, q110, {{"0"}, {"mu"}}, {}, {}, "printed as a scalar; lower placement");
    add(q200, q111, {{"mu"}, {"0"}}, {}, {}, "printed as a scalar; upper placement");
    add(q200, q111, {{"0"}, {"mu"}}, {}, {}, "printed as a scalar; lower placement");
    add(q200, q100, {{"mu"}, {"0"}}, {}, {}, "printed as a scalar; upper placement");
    add(q200, q100, {{"0"}, {"mu"}}, {}, {}, "printed as a scalar; lower placement");
    add(q200, q010, {}, {});
    // column (1,2,1)
    add(q121, q211, {{"mu", "nu"}}, {{"sigma"}, {"alpha"}}, {}, "printed transposed");
    add(q121, q200, {{"mu", "nu"}}, {}, {}, "printed transposed");
    add(q121, q121, {{"alpha"}}, {{"mu", "nu"}, {"nu", "0"}}, {{"mu=0", "nu=0"}});
    add(q121, q110, {{"mu"}}, {{"nu"}, {"0"}});
    add(q121, q111, {{"mu"}}, {{"nu"}, {"alpha"}});
    add(q121, q100, {{"mu"}}, {});
    add(q121, q010, {}, {{"mu"}, {"0"}}, {}, "printed as a scalar; upper placement");
    add(q121, q010, {}, {{"0"}, {"mu"}}, {}, "printed as a scalar; lower placement");
    // Table 4
    add(q110, q110, {{"mu"}}, {{"nu"}});
    add(q110, q111, {{"mu"}}, {{"nu"}});
    add(q110, q100, {{"mu"}}, {});
    add(q110, q010, {}, {{"mu"}});
    add(q111, q110, {{"mu"}}, {{"nu"}});
    add(q111, q111, {{"mu"}}, {{"0"}});
    add(q111, q100, {{"mu"}}, {});
    add(q111, q010, {}, {{"mu"}});
    add(q100, q110, {{"mu"}}, {});
    add(q100, q111, {{"mu"}}, {});
    add(q100, q100, {{"mu"}}, {});
    add(q100, q010, {}, {});
    add(q010, q110, {}, {{"mu"}});
    add(q010, q111, {}, {{"mu"}});
    add(q010, q100, {}, {});
    add(q010, q010, {}, {{"mu"}});
    return v;
  }();
  return c;
}

}  // namespace tables
}  // namespace galileq
