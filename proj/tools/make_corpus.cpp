// Regenerates data/corpus.json from the built-in group constructions.
// Output is deterministic, so the committed file is reproducible.

#include <iostream>
#include <string>

#include "minrep/corpus.hpp"

int main(int argc, char** argv) {
  std::string out = argc > 1 ? argv[1] : "data/corpus.json";
  try {
    minrep::write_text_file(out, minrep::corpus_to_json(minrep::bundled_corpus()).dump(2) + "\n");
  } catch (const minrep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}
