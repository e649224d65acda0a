#ifndef ASPECTGEN_WIKI_WIKITEXT_HPP
#define ASPECTGEN_WIKI_WIKITEXT_HPP

#include <string>

namespace aspectgen::wiki {

// Strips wiki markup down to plain prose. Removes comments, <ref> material,
// templates, tables, media/category links and HTML tags; rewrites internal
// and external links to their visible text; drops bold/italic quoting; and
// collapses whitespace. Unbalanced constructs are treated as closed at end
// of input. The result is stable under a second application.
std::string clean_wikitext(const std::string& wikitext);

}  // namespace aspectgen::wiki

#endif
