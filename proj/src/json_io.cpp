#include "paperfold/json_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace paperfold {

using nlohmann::json;

namespace {

json face_to_json(const FaceId& id, Sign s) {
    return json{{"axis", id.axis},
                {"corner", id.corner},
                {"sign", std::string(1, sign_char(s))}};
}

}  // namespace

std::string to_json(const CreasePattern& p) {
    json j;
    j["d"] = p.d;
    j["extent"] = p.extent;
    json faces = json::array();
    for (const auto& [id, sign] : p.faces)  // map order = (axis, corner) lexicographic
        faces.push_back(face_to_json(id, sign));
    j["faces"] = std::move(faces);
    return j.dump(2) + "\n";
}

CreasePattern crease_pattern_from_json(const std::string& text) {
    const json j = json::parse(text);
    CreasePattern p;
    p.d = j.at("d").get<int>();
    p.extent = j.at("extent").get<int>();
    for (const auto& f : j.at("faces")) {
        FaceId id;
        id.axis = f.at("axis").get<int>();
        id.corner = f.at("corner").get<Coords>();
        const std::string s = f.at("sign").get<std::string>();
        if (s.size() != 1) throw std::invalid_argument("sign must be '+' or '-'");
        p.insert_face(std::move(id), sign_from_char(s[0]));
    }
    p.check_invariants();
    return p;
}

std::string to_json(const SymbolicPattern& p) {
    json j;
    j["d"] = p.d;
    j["origin"] = p.origin;
    j["shape"] = p.shape;
    j["letters"] = p.cells;
    return j.dump(2) + "\n";
}

SymbolicPattern symbolic_pattern_from_json(const std::string& text) {
    const json j = json::parse(text);
    SymbolicPattern p;
    p.d = j.at("d").get<int>();
    p.origin = j.at("origin").get<Coords>();
    p.shape = j.at("shape").get<Coords>();
    p.cells = j.at("letters").get<std::vector<int>>();
    p.check_parity();
    return p;
}

std::string to_json(const PrimitivityResult& r) {
    return json{{"primitive", r.primitive}, {"k", r.k}}.dump() + "\n";
}

std::string to_json(const CoincidenceReport& r) {
    json j;
    if (!r.found) {
        j["coincidence"] = nullptr;
        j["searched_up_to"] = r.k;
    } else {
        json c;
        c["k"] = r.k;
        c["position"] = r.position;
        c["letter"] = r.letter;
        c["all_positions"] = r.positions;
        j["coincidence"] = std::move(c);
    }
    return j.dump() + "\n";
}

std::string to_json(const EquivalenceReport& r) {
    json j;
    j["d"] = r.d;
    j["k"] = r.steps;
    j["equal"] = r.equal;
    j["faces_compared"] = r.faces_compared;
    if (r.first_mismatch) {
        j["mismatch"] = {{"axis", r.first_mismatch->axis}, {"corner", r.first_mismatch->corner}};
        if (r.recursion_sign)
            j["mismatch"]["recursion"] = std::string(1, sign_char(*r.recursion_sign));
        if (r.substitution_sign)
            j["mismatch"]["substitution"] = std::string(1, sign_char(*r.substitution_sign));
    }
    return j.dump() + "\n";
}

}  // namespace paperfold
