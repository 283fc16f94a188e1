#pragma once

namespace d2t {

inline constexpr const char* kVersion = "0.1.0";

// One-line summary of the scoring conventions compiled into this build.
// Shown by `d2t --version` and embedded in every report so that numbers
// stay traceable to the conventions that produced them.
inline constexpr const char* kConventions =
    "tokenizer=lowercase-whitespace entailment=word-overlap "
    "orders=geometric-mean lambda=auto-unless-fixed bleu=clipped-exp-bp";

}  // namespace d2t
