#include "trinerve/ssx.hpp"

#include <fstream>
#include <sstream>

#include "trinerve/errors.hpp"

namespace trinerve {

using nlohmann::json;

json ssx_to_json(const TruncSSet& X) {
    json j;
    j["trunc"] = X.trunc();
    json dims = json::array();
    for (int d = 0; d <= X.trunc(); ++d) {
        json ids = json::array();
        for (std::uint32_t id = 0; id < X.count(d); ++id) ids.push_back(id);
        dims.push_back(std::move(ids));
    }
    j["dims"] = std::move(dims);
    json faces = json::object();
    for (int d = 1; d <= X.trunc(); ++d)
        for (std::uint32_t id = 0; id < X.count(d); ++id)
            for (int i = 0; i <= d; ++i) {
                const auto& r = X.face_entry(d, id, i);
                faces[std::to_string(d) + "/" + std::to_string(id) + "/" + std::to_string(i)] =
                    json{{"degens", r.degeneracy_word()}, {"target", r.id}};
            }
    j["faces"] = std::move(faces);
    bool any_labels = false;
    for (int d = 0; d <= X.trunc(); ++d) any_labels = any_labels || X.has_labels(d);
    if (any_labels) {
        json labels = json::array();
        for (int d = 0; d <= X.trunc(); ++d) {
            json ls = json::array();
            if (X.has_labels(d))
                for (std::uint32_t id = 0; id < X.count(d); ++id) ls.push_back(X.label(d, id));
            labels.push_back(std::move(ls));
        }
        j["labels"] = std::move(labels);
    }
    return j;
}

TruncSSet ssx_from_json(const json& j) {
    try {
        if (!j.is_object()) throw InputError("SSX document must be an object");
        int N = j.at("trunc").get<int>();
        if (N < 0 || N > 24) throw InputError("SSX trunc out of range");
        const auto& dims = j.at("dims");
        if (!dims.is_array() || static_cast<int>(dims.size()) != N + 1)
            throw InputError("SSX dims must list ids for every dimension 0..trunc");
        const auto& faces = j.at("faces");
        const json* labels = j.contains("labels") ? &j.at("labels") : nullptr;
        if (labels && (!labels->is_array() || static_cast<int>(labels->size()) != N + 1))
            throw InputError("SSX labels must have one list per dimension");
        TruncSSet X(N);
        for (int d = 0; d <= N; ++d) {
            const auto& ids = dims[d];
            for (std::size_t t = 0; t < ids.size(); ++t)
                if (ids[t].get<std::uint64_t>() != t)
                    throw InputError("SSX ids in dimension " + std::to_string(d) + " must be 0..count-1 in order");
            bool has_labels = labels && !(*labels)[d].empty();
            if (has_labels && (*labels)[d].size() != ids.size())
                throw InputError("SSX labels in dimension " + std::to_string(d) + " do not match the ids");
            std::vector<SimplexRef> fs(d == 0 ? 0 : d + 1);
            for (std::uint32_t id = 0; id < ids.size(); ++id) {
                for (int i = 0; d > 0 && i <= d; ++i) {
                    std::string key = std::to_string(d) + "/" + std::to_string(id) + "/" + std::to_string(i);
                    auto it = faces.find(key);
                    if (it == faces.end()) throw InputError("SSX missing face entry " + key);
                    auto word = it->at("degens").get<std::vector<int>>();
                    SimplexRef r;
                    r.dim = d - 1;
                    r.id = it->at("target").get<std::uint32_t>();
                    for (std::size_t w = 0; w < word.size(); ++w) {
                        if (word[w] < 0 || word[w] >= d - 1 || (w > 0 && word[w] >= word[w - 1]))
                            throw InputError("SSX face " + key + " has a malformed degeneracy word");
                        r.degens |= 1u << word[w];
                    }
                    if (!X.valid_ref(r)) throw InputError("SSX face " + key + " points to a missing simplex");
                    fs[i] = r;
                }
                Label lab = has_labels ? (*labels)[d][id].get<Label>() : Label{};
                X.add_simplex(d, fs, std::move(lab));
            }
        }
        std::size_t expected = 0;
        for (int d = 1; d <= N; ++d) expected += static_cast<std::size_t>(X.count(d)) * (d + 1);
        if (faces.size() != expected) throw InputError("SSX has face entries for unknown simplices");
        return X;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed SSX: ") + e.what());
    }
}

std::string write_ssx(const TruncSSet& X) { return ssx_to_json(X).dump(); }

TruncSSet read_ssx(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("SSX is not valid JSON: ") + e.what());
    }
    return ssx_from_json(j);
}

void save_ssx(const TruncSSet& X, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << write_ssx(X) << "\n";
}

TruncSSet load_ssx(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_ssx(ss.str());
}

}  // namespace trinerve
