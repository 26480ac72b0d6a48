#pragma once

#include <stdexcept>
#include <string>

namespace versecraft {

// Root of the library's exception hierarchy.  Every failure mode surfaced by
// the public API derives from Error, so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyPoem : public Error { public: using Error::Error; };
class InvalidEncoding : public Error { public: using Error::Error; };
class MissingFile : public Error { public: using Error::Error; };
class DuplicateId : public Error { public: using Error::Error; };
class ManifestParseError : public Error { public: using Error::Error; };
class LexiconParseError : public Error { public: using Error::Error; };
class DictParseError : public Error { public: using Error::Error; };
class UnknownMetric : public Error { public: using Error::Error; };
class NegativeWeight : public Error { public: using Error::Error; };
class MismatchedRegistry : public Error { public: using Error::Error; };
class TooFewPoems : public Error { public: using Error::Error; };
class NoIntraPairs : public Error { public: using Error::Error; };
class UnknownId : public Error { public: using Error::Error; };
class NoVowel : public Error { public: using Error::Error; };
class UnknownTag : public Error { public: using Error::Error; };
class EmptyCorpus : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };

} // namespace versecraft
