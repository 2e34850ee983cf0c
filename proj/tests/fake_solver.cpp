// Stand-in external solver for the CLI tests: fake_solver <mode> <cnf-file>.
//   solve    answer with the internal solver, SAT-competition style output
//   liar     claim SAT with the all-true assignment
//   silent   print nothing and exit 0
//   crash    exit with status 1

#include <fstream>
#include <iostream>
#include <string>

#include "vegraph/io.hpp"
#include "vegraph/minisolver.hpp"

int main(int argc, char** argv) {
  if (argc != 3) return 2;
  const std::string mode = argv[1];
  std::ifstream in(argv[2]);
  if (!in) return 2;
  auto cnf = vegraph::parse_dimacs(in);
  if (mode == "crash") return 1;
  if (mode == "silent") return 0;
  if (mode == "liar") {
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= cnf.var_count; ++v) std::cout << ' ' << v;
    std::cout << " 0\n";
    return 10;
  }
  auto r = vegraph::solve(cnf);
  if (r.status == vegraph::SolveStatus::unsat) {
    std::cout << "s UNSATISFIABLE\n";
    return 20;
  }
  std::cout << "c fake solver\ns SATISFIABLE\n";
  // split the model over several v lines
  for (int v = 1; v <= cnf.var_count; ++v) {
    if ((v - 1) % 10 == 0) std::cout << (v > 1 ? "\nv" : "v");
    std::cout << ' ' << (r.model.value(v) ? v : -v);
  }
  std::cout << (cnf.var_count > 0 ? "\n" : "") << "v 0\n";
  return 10;
}
