#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace drunktext {

// Base for all data-level failures. The CLI maps these to exit code 2;
// command-line usage problems are handled by the argument parser (exit 1).
class PipelineError : public std::runtime_error {
public:
    explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedLine : public PipelineError {
public:
    MalformedLine(std::size_t line_no, const std::string& detail)
        : PipelineError("malformed line " + std::to_string(line_no) + ": " + detail),
          line_no(line_no) {}
    std::size_t line_no;
};

class DuplicateTweet : public PipelineError {
public:
    explicit DuplicateTweet(const std::string& tweet_id)
        : PipelineError("duplicate tweet id: " + tweet_id), tweet_id(tweet_id) {}
    std::string tweet_id;
};

class EmptyLexicon : public PipelineError {
public:
    explicit EmptyLexicon(const std::string& what) : PipelineError("empty lexicon: " + what) {}
};

class InvalidConfig : public PipelineError {
public:
    explicit InvalidConfig(const std::string& what) : PipelineError("invalid config: " + what) {}
};

class EmptyCorpus : public PipelineError {
public:
    EmptyCorpus() : PipelineError("empty corpus") {}
};

class EmptySegment : public PipelineError {
public:
    EmptySegment(const std::string& user_id, const std::string& segment)
        : PipelineError("user " + user_id + " has no tokens in segment " + segment),
          user_id(user_id) {}
    std::string user_id;
};

class EmptyDataset : public PipelineError {
public:
    EmptyDataset() : PipelineError("no rows survive featurization") {}
};

class SingleClass : public PipelineError {
public:
    explicit SingleClass(const std::string& where)
        : PipelineError("only one class present in " + where) {}
};

class TooFewPerClass : public PipelineError {
public:
    TooFewPerClass(std::size_t have, std::size_t k)
        : PipelineError("class with " + std::to_string(have) + " members cannot fill k=" +
                        std::to_string(k) + " folds") {}
};

class DimensionMismatch : public PipelineError {
public:
    DimensionMismatch(std::size_t got, std::size_t want)
        : PipelineError("feature vector length " + std::to_string(got) + ", schema wants " +
                        std::to_string(want)) {}
};

class Degenerate : public PipelineError {
public:
    explicit Degenerate(const std::string& what) : PipelineError("degenerate input: " + what) {}
};

class EmptyGraph : public PipelineError {
public:
    EmptyGraph() : PipelineError("graph has no nodes or no edge weight") {}
};

class TooFewProfiles : public PipelineError {
public:
    TooFewProfiles(std::size_t have)
        : PipelineError("need at least 3 profiles with peaks, have " + std::to_string(have)) {}
};

class IoError : public PipelineError {
public:
    explicit IoError(const std::string& what) : PipelineError("io error: " + what) {}
};

}  // namespace drunktext
