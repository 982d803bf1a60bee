// Serial vs OpenMP oracle sweep over random corpora.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include "valx/corpus.hpp"
#include "valx/parse.hpp"

using namespace valx;

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
  const char* specs[] = {
      "pcv(alpha=0, breadth=\">=1\")",
      "pdv(alpha=0, breadth=\">0\")",
      "pcv(alpha=0, breadth=\">sqrt(2)\")",
      "pcv(alpha=0, breadth=\">=1\") field=composite:5",
      "cauchy(limit=-1/4) field=padic:5",
  };
  std::cout << "threads " << omp_get_max_threads() << ", corpus " << n << "\n";
  std::cout << std::left << std::setw(52) << "sequence" << std::right << std::setw(10) << "serial" << std::setw(10)
            << "parallel" << std::setw(9) << "speedup" << "\n";
  using clock = std::chrono::steady_clock;
  bool same = true;
  for (const char* s : specs) {
    SeqSpec spec = parse_seq(s);
    PMSeq E = spec.build();
    auto corpus = random_corpus(spec.field, n, 12345);

    auto t0 = clock::now();
    auto a = oracle_corpus_serial(corpus, E);
    auto t1 = clock::now();
    auto b = oracle_corpus_parallel(corpus, E);
    auto t2 = clock::now();

    for (std::size_t i = 0; i < n; ++i)
      same &= a[i].agree == b[i].agree && a[i].value == b[i].value && a[i].fit.gamma == b[i].fit.gamma;
    double ts = std::chrono::duration<double>(t1 - t0).count();
    double tp = std::chrono::duration<double>(t2 - t1).count();
    std::cout << std::left << std::setw(52) << spec.str() << std::right << std::fixed << std::setprecision(3)
              << std::setw(9) << ts << "s" << std::setw(9) << tp << "s" << std::setw(8) << std::setprecision(2)
              << ts / tp << "x\n";
  }
  std::cout << (same ? "results identical\n" : "RESULTS DIFFER\n");
  return same ? 0 : 1;
}
