#pragma once

#include <functional>
#include <vector>

namespace thf {

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

GaussRule gauss_legendre(int n);

struct Node {
  double x, w;
};

// composite rule with `panels` equal panels on [a, b]
std::vector<Node> composite_rule(const GaussRule& g, double a, double b, int panels);

// Rule for integrands behaving like |x - a|^e near a and |x - b|^e' near b (e, e' > -1).
// Each half gets geometric panels (ratio 1/2) toward its end, split to at most
// max_panel, and an innermost panel mapped through x = end + h s^k.
// Nodes are returned as offsets from the nearer endpoint so callers can evaluate accurately.
struct GradedNode {
  int end;        // 0: offset from a, 1: offset from b (negative)
  double offset;  // x - a or x - b
  double w;
};

std::vector<GradedNode> graded_rule(const GaussRule& g, double a, double b, double exp_a, double exp_b,
                                    double max_panel, int levels = 50);

int grading_power(double exponent);

}  // namespace thf
