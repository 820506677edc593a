#include "coordscan/writers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>

#include "coordscan/errors.hpp"

namespace coordscan {

std::string fmt_number(double value) {
    if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string iso_date(std::int64_t epoch_seconds) {
    // floor division keeps pre-1970 week starts honest
    std::int64_t days = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --days;
    // civil-from-days (Howard Hinnant's algorithm)
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const std::int64_t doe = days - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lld",
                  static_cast<long long>(m <= 2 ? y + 1 : y), static_cast<long long>(m),
                  static_cast<long long>(d));
    return buf;
}

std::string xml_escape(const std::string& value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

namespace {

std::string breakdown_string(const MergedEdge& edge) {
    std::string out;
    for (const auto& [criterion, weight] : edge.breakdown) {
        if (!out.empty()) out.push_back(';');
        out += criterion_name(criterion);
        out.push_back(':');
        out += std::to_string(weight);
    }
    return out;
}

} // namespace

void write_lcn_tsv(const MergedLcn& g, std::ostream& out) {
    for (const auto& [pair, edge] : g.edges)
        out << pair.first << '\t' << pair.second << '\t' << fmt_number(edge.weight) << '\t'
            << breakdown_string(edge) << '\n';
}

void write_lcn_graphml(const MergedLcn& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    for (Criterion c : kAllCriteria)
        out << "  <key id=\"" << criterion_name(c) << "\" for=\"edge\" attr.name=\""
            << criterion_name(c) << "\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"lcn\" edgedefault=\"undirected\">\n";
    for (const auto& v : g.vertices)
        out << "    <node id=\"" << xml_escape(v) << "\"/>\n";
    for (const auto& [pair, edge] : g.edges) {
        out << "    <edge source=\"" << xml_escape(pair.first) << "\" target=\""
            << xml_escape(pair.second) << "\">"
            << "<data key=\"weight\">" << fmt_number(edge.weight) << "</data>";
        for (const auto& [criterion, weight] : edge.breakdown)
            out << "<data key=\"" << criterion_name(criterion) << "\">" << weight << "</data>";
        out << "</edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_groups_csv(const std::vector<AccountGroup>& groups, std::ostream& out) {
    out << "hcc_id,account_id\n";
    for (const auto& g : groups)
        for (const auto& m : g.members)
            out << csv_field(g.id) << ',' << csv_field(m) << '\n';
}

std::vector<AccountGroup> load_groups_csv(std::istream& in) {
    std::vector<AccountGroup> groups;
    std::map<std::string, std::size_t> index;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("hcc_id,", 0) == 0) continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError("membership csv: line without a comma: " + line);
        const std::string id = line.substr(0, comma);
        const std::string account = line.substr(comma + 1);
        auto [it, fresh] = index.emplace(id, groups.size());
        if (fresh) groups.push_back(AccountGroup{id, {}});
        groups[it->second].members.push_back(account);
    }
    for (auto& g : groups) std::sort(g.members.begin(), g.members.end());
    return groups;
}

void write_similarity_csv(const SimilarityMatrix& m, std::ostream& out) {
    out << "account_id";
    for (const auto& account : m.accounts) out << ',' << csv_field(account);
    out << '\n';
    for (std::size_t i = 0; i < m.accounts.size(); ++i) {
        out << csv_field(m.accounts[i]);
        for (std::size_t j = 0; j < m.accounts.size(); ++j) out << ',' << fmt_number(m.values[i][j]);
        out << '\n';
    }
}

void write_similarity_index_csv(const SimilarityMatrix& m, std::ostream& out) {
    out << "hcc_id,first_row,last_row\n";
    std::size_t start = 0;
    for (std::size_t i = 1; i <= m.group_of.size(); ++i) {
        if (i == m.group_of.size() || m.group_of[i] != m.group_of[start]) {
            out << csv_field(m.group_of[start]) << ',' << start << ',' << i - 1 << '\n';
            start = i;
        }
    }
}

void write_entropy_csv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                       std::ostream& out) {
    out << "hcc_id,feature,entropy,distinct_values,total_uses\n";
    for (const auto& g : groups) {
        const auto report = feature_entropy(g, index);
        for (const auto& [feature, fe] : report)
            out << csv_field(g.id) << ',' << feature << ',' << fmt_number(fe.entropy) << ','
                << fe.distinct_values << ',' << fe.total_uses << '\n';
    }
}

void write_ratios_csv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                      std::ostream& out) {
    out << "hcc_id,internal_retweets,total_retweets,irr,internal_mentions,total_mentions,imr\n";
    for (const auto& g : groups) {
        const auto r = internal_ratios(g, index);
        out << csv_field(g.id) << ',' << r.internal_reposts << ',' << r.total_reposts << ','
            << (r.irr ? fmt_number(*r.irr) : "") << ',' << r.internal_mentions << ','
            << r.total_mentions << ',' << (r.imr ? fmt_number(*r.imr) : "") << '\n';
    }
}

void write_activity_csv(const std::vector<AccountGroup>& groups, const ActivitySeries& series,
                        std::ostream& out) {
    out << "bucket_start,hcc_id,value\n";
    for (std::size_t b = 0; b < series.bucket_start.size(); ++b) {
        const std::string date = iso_date(series.bucket_start[b]);
        for (std::size_t gi = 0; gi < groups.size(); ++gi)
            out << date << ',' << csv_field(groups[gi].id) << ','
                << fmt_number(series.group_values[gi][b]) << '\n';
        out << date << ",mean," << fmt_number(series.mean_values[b]) << '\n';
    }
}

void write_cooccurrence_tsv(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                            std::ostream& out) {
    for (const auto& g : groups) {
        const auto graph = hashtag_cooccurrence(g, index);
        for (const auto& [pair, weight] : graph.edges)
            out << g.id << '\t' << pair.first << '\t' << pair.second << '\t' << weight << '\n';
    }
}

void write_cooccurrence_graphml(const std::vector<AccountGroup>& groups, const CorpusIndex& index,
                                std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "  <key id=\"tag\" for=\"node\" attr.name=\"tag\" attr.type=\"string\"/>\n";
    for (const auto& g : groups) {
        const auto graph = hashtag_cooccurrence(g, index);
        if (graph.tags.empty()) continue;
        out << "  <graph id=\"" << xml_escape(g.id) << "\" edgedefault=\"undirected\">\n";
        for (const auto& tag : graph.tags)
            out << "    <node id=\"" << xml_escape(g.id + ":" + tag) << "\"><data key=\"tag\">"
                << xml_escape(tag) << "</data></node>\n";
        for (const auto& [pair, weight] : graph.edges)
            out << "    <edge source=\"" << xml_escape(g.id + ":" + pair.first) << "\" target=\""
                << xml_escape(g.id + ":" + pair.second) << "\"><data key=\"weight\">" << weight
                << "</data></edge>\n";
        out << "  </graph>\n";
    }
    out << "</graphml>\n";
}

void write_reason_graph_tsv(const ReasonGraph& rg, std::ostream& out) {
    for (const auto& [key, weight] : rg.edges) {
        const auto& [account, criterion, reason] = key;
        out << account << '\t' << rg.account_group.at(account) << '\t' << criterion_name(criterion)
            << '\t' << reason << '\t' << weight << '\n';
    }
}

void write_reason_graph_graphml(const ReasonGraph& rg, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"hcc\" for=\"node\" attr.name=\"hcc\" attr.type=\"string\"/>\n"
        << "  <key id=\"criterion\" for=\"node\" attr.name=\"criterion\" attr.type=\"string\"/>\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "  <graph id=\"reasons\" edgedefault=\"undirected\">\n";
    for (const auto& [account, group] : rg.account_group)
        out << "    <node id=\"" << xml_escape("a:" + account)
            << "\"><data key=\"kind\">account</data><data key=\"hcc\">" << xml_escape(group)
            << "</data><data key=\"label\">" << xml_escape(account) << "</data></node>\n";
    for (const auto& [criterion, key] : rg.reasons)
        out << "    <node id=\""
            << xml_escape(std::string("r:") + criterion_name(criterion) + ":" + key)
            << "\"><data key=\"kind\">reason</data><data key=\"criterion\">"
            << criterion_name(criterion) << "</data><data key=\"label\">" << xml_escape(key)
            << "</data></node>\n";
    for (const auto& [key, weight] : rg.edges) {
        const auto& [account, criterion, reason] = key;
        out << "    <edge source=\"" << xml_escape("a:" + account) << "\" target=\""
            << xml_escape(std::string("r:") + criterion_name(criterion) + ":" + reason)
            << "\"><data key=\"weight\">" << weight << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_interactions_tsv(const std::vector<Interaction>& interactions, std::ostream& out) {
    for (const auto& x : interactions)
        out << kind_name(x.kind) << '\t' << x.actor << '\t' << x.timestamp << '\t' << x.key << '\t'
            << x.source_post << '\n';
}

} // namespace coordscan
