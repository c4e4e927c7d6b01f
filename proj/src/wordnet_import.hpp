#ifndef DESCQA_WORDNET_IMPORT_HPP
#define DESCQA_WORDNET_IMPORT_HPP

#include <string>

#include "diagnostics.hpp"

namespace descqa {

// Converts a WordNet database directory (index.noun/data.noun and friends)
// into the tab-separated relation format read by LexicalGraph::load.
//
// For every single-token lemma, relations come from its first listed sense:
// co-words of that synset become synonym lines, and each hypernym/hyponym
// pointer target contributes its first single-token word. Multi-word lemmas
// (underscore entries) are skipped entirely. Output lines are lowercase and
// ordered by index-file position, so the conversion is deterministic.
//
// Returns the number of relation lines written.
size_t import_wordnet(const std::string& wordnet_dir,
                      const std::string& out_path,
                      Diagnostics* diag = nullptr);

}  // namespace descqa

#endif
