#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coordscan/analysis.hpp"
#include "coordscan/lcn.hpp"

namespace coordscan {

// Shortest clean decimal: integers print bare, everything else round-trips.
std::string fmt_number(double value);

// RFC-4180 style quoting, applied only when the field needs it.
std::string csv_field(const std::string& value);

// UTC calendar date (YYYY-MM-DD) of an epoch timestamp.
std::string iso_date(std::int64_t epoch_seconds);

std::string xml_escape(const std::string& value);

// u TAB v TAB weight TAB criterion breakdown ("co_retweet:3;co_hashtag:2")
void write_lcn_tsv(const MergedLcn& g, std::ostream& out);
void write_lcn_graphml(const MergedLcn& g, std::ostream& out);

void write_groups_csv(const std::vector<AccountGroup>& groups, std::ostream& out);
std::vector<AccountGroup> load_groups_csv(std::istream& in);

void write_similarity_csv(const SimilarityMatrix& m, std::ostream& out);
// hcc_id,first_row,last_row (0-based data rows of the matrix)
void write_similarity_index_csv(const SimilarityMatrix& m, std::ostream& out);

void write_entropy_csv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                       std::ostream& out);
void write_ratios_csv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                      std::ostream& out);
void write_activity_csv(const std::vector<AccountGroup>& groups, const ActivitySeries& series,
                        std::ostream& out);

void write_cooccurrence_tsv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                            std::ostream& out);
void write_cooccurrence_graphml(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                                std::ostream& out);

void write_reason_graph_tsv(const ReasonGraph& rg, std::ostream& out);
void write_reason_graph_graphml(const ReasonGraph& rg, std::ostream& out);

void write_interactions_tsv(const std::vector<Interaction>& interactions, std::ostream& out);

} // namespace coordscan
