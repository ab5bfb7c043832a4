#include "supcone/modelspec.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace supcone {

using ojson = nlohmann::ordered_json;

namespace {

std::string ext_rat_str(const ExtRat& c) {
    return c.inf ? std::string("inf") : rational_to_string(c.v);
}

ExtRat ext_rat_parse(const std::string& s) {
    ExtRat c;
    if (s == "inf") {
        c.inf = true;
        return c;
    }
    c.v = parse_rational(s);
    return c;
}

ojson vec_to_json(const std::vector<Rat>& v) {
    ojson a = ojson::array();
    for (const auto& q : v) a.push_back(rational_to_string(q));
    return a;
}

std::vector<Rat> vec_from_json(const ojson& a, const std::string& field) {
    if (!a.is_array()) throw ParseError(field + ": expected an array of rationals");
    std::vector<Rat> v;
    for (const auto& e : a) {
        if (!e.is_string()) throw ParseError(field + ": rationals must be \"p/q\" strings");
        v.push_back(parse_rational(e.get<std::string>()));
    }
    return v;
}

ojson band_to_json(const std::vector<int>& b) {
    ojson a = ojson::array();
    for (int i : b) a.push_back(i);
    return a;
}

std::vector<int> band_from_json(const ojson& a, const std::string& field) {
    if (!a.is_array()) throw ParseError(field + ": expected an array of atom indices");
    std::vector<int> b;
    for (const auto& e : a) {
        if (!e.is_number_integer()) throw ParseError(field + ": atom indices must be integers");
        b.push_back(e.get<int>());
    }
    return b;
}

ojson partition_to_json(const PartitionSpec& p) {
    ojson a = ojson::array();
    for (const auto& blk : p) a.push_back(band_to_json(blk));
    return a;
}

PartitionSpec partition_from_json(const ojson& a, const std::string& field) {
    if (!a.is_array()) throw ParseError(field + ": expected an array of blocks");
    PartitionSpec p;
    for (const auto& blk : a) p.push_back(band_from_json(blk, field));
    return p;
}

ojson tail_to_json(const TailSpec& t) {
    ojson o;
    o["kind"] = t.kind;
    if (t.kind == "constant" || t.kind == "periodic" || t.kind == "geometric") {
        ojson vals = ojson::array();
        for (const auto& v : t.values) vals.push_back(vec_to_json(v));
        o["values"] = vals;
    }
    if (t.kind == "geometric") o["ratio"] = rational_to_string(t.ratio);
    return o;
}

TailSpec tail_from_json(const ojson& o, const std::string& field) {
    if (!o.is_object() || !o.contains("kind"))
        throw ParseError(field + ".tail: expected an object with a kind");
    TailSpec t;
    t.kind = o.at("kind").get<std::string>();
    if (t.kind != "zero") {
        if (!o.contains("values")) throw ParseError(field + ".tail.values: missing");
        for (const auto& v : o.at("values")) t.values.push_back(vec_from_json(v, field + ".tail.values"));
    }
    if (t.kind == "geometric") {
        if (!o.contains("ratio")) throw ParseError(field + ".tail.ratio: missing");
        t.ratio = parse_rational(o.at("ratio").get<std::string>());
    }
    return t;
}

} // namespace

void validate_model(const ModelSpec& m) {
    if (m.atoms.empty()) throw DomainError("atoms: at least one atom required");
    if (m.weights.size() != m.atoms.size())
        throw DomainError("weights: must match the number of atoms");
    Rat total(0);
    for (const auto& w : m.weights) {
        if (!(w > 0)) throw DomainError("weights: entries must be strictly positive");
        total += w;
    }
    if (total != 1) throw DomainError("weights: must sum to 1 exactly, got " + rational_to_string(total));

    const std::size_t n = m.dim();
    for (const auto& [name, f] : m.partitions) {
        try {
            instantiate_filtration<Rat>(m, f);
        } catch (const Error& e) {
            throw DomainError("partitions." + name + ": " + e.what());
        }
    }
    for (const auto& [name, s] : m.sequences) {
        try {
            instantiate_vecseq<Rat>(s, n);
        } catch (const Error& e) {
            throw DomainError("sequences." + name + ": " + e.what());
        }
    }
    for (const auto& [name, s] : m.proj_sequences) {
        try {
            instantiate_projseq(s, n);
        } catch (const Error& e) {
            throw DomainError("proj_sequences." + name + ": " + e.what());
        }
    }
    for (const auto& [name, v] : m.vectors)
        if (v.size() != n) throw DomainError("vectors." + name + ": wrong dimension");
    for (const auto& [name, p] : m.processes) {
        const auto seq = m.sequences.find(p.sequence);
        if (seq == m.sequences.end())
            throw DomainError("processes." + name + ".sequence: unknown sequence " + p.sequence);
        const auto filt = m.partitions.find(p.filtration);
        if (filt == m.partitions.end())
            throw DomainError("processes." + name + ".filtration: unknown partition chain " +
                              p.filtration);
        try {
            AdaptedProcess<Rat>(instantiate_vecseq<Rat>(seq->second, n),
                                instantiate_filtration<Rat>(m, filt->second));
        } catch (const Error& e) {
            throw DomainError("processes." + name + ": " + e.what());
        }
    }
}

std::string model_to_json_string(const ModelSpec& m) {
    ojson o;
    o["atoms"] = m.atoms;
    o["weights"] = vec_to_json(m.weights);
    ojson parts = ojson::object();
    for (const auto& [name, f] : m.partitions) {
        ojson fo;
        fo["global"] = partition_to_json(f.global);
        ojson chain = ojson::array();
        for (const auto& p : f.chain) chain.push_back(partition_to_json(p));
        fo["chain"] = chain;
        fo["tail"] = partition_to_json(f.tail);
        parts[name] = fo;
    }
    o["partitions"] = parts;
    ojson seqs = ojson::object();
    for (const auto& [name, s] : m.sequences) {
        ojson so;
        so["type"] = "vec";
        ojson pre = ojson::array();
        for (const auto& v : s.prefix) pre.push_back(vec_to_json(v));
        so["prefix"] = pre;
        so["tail"] = tail_to_json(s.tail);
        seqs[name] = so;
    }
    for (const auto& [name, s] : m.proj_sequences) {
        ojson so;
        so["type"] = "proj";
        ojson pre = ojson::array();
        for (const auto& b : s.prefix) pre.push_back(band_to_json(b));
        so["prefix"] = pre;
        ojson tl = ojson::array();
        for (const auto& b : s.tail) tl.push_back(band_to_json(b));
        so["tail"] = tl;
        so["tail_periodic"] = s.tail_periodic;
        seqs[name] = so;
    }
    o["sequences"] = seqs;
    ojson procs = ojson::object();
    for (const auto& [name, p] : m.processes) {
        ojson po;
        po["sequence"] = p.sequence;
        po["filtration"] = p.filtration;
        procs[name] = po;
    }
    o["processes"] = procs;
    ojson vecs = ojson::object();
    for (const auto& [name, v] : m.vectors) {
        ojson a = ojson::array();
        for (const auto& c : v) a.push_back(ext_rat_str(c));
        vecs[name] = a;
    }
    o["vectors"] = vecs;
    return o.dump(2) + "\n";
}

ModelSpec model_from_json_string(const std::string& text) {
    ojson o;
    try {
        o = ojson::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("model JSON: ") + e.what());
    }
    if (!o.is_object()) throw ParseError("model JSON: top level must be an object");
    ModelSpec m;
    if (!o.contains("atoms")) throw ParseError("atoms: missing");
    for (const auto& a : o.at("atoms")) {
        if (!a.is_string()) throw ParseError("atoms: names must be strings");
        m.atoms.push_back(a.get<std::string>());
    }
    if (!o.contains("weights")) throw ParseError("weights: missing");
    m.weights = vec_from_json(o.at("weights"), "weights");
    if (o.contains("partitions")) {
        for (const auto& [name, fo] : o.at("partitions").items()) {
            FiltrationSpec f;
            const std::string field = "partitions." + name;
            if (!fo.contains("global") || !fo.contains("chain") || !fo.contains("tail"))
                throw ParseError(field + ": needs global, chain and tail");
            f.global = partition_from_json(fo.at("global"), field + ".global");
            for (const auto& p : fo.at("chain"))
                f.chain.push_back(partition_from_json(p, field + ".chain"));
            f.tail = partition_from_json(fo.at("tail"), field + ".tail");
            m.partitions[name] = std::move(f);
        }
    }
    if (o.contains("sequences")) {
        for (const auto& [name, so] : o.at("sequences").items()) {
            const std::string field = "sequences." + name;
            const std::string type = so.value("type", "vec");
            if (type == "vec") {
                VecSeqSpec s;
                if (so.contains("prefix"))
                    for (const auto& v : so.at("prefix"))
                        s.prefix.push_back(vec_from_json(v, field + ".prefix"));
                if (!so.contains("tail")) throw ParseError(field + ".tail: missing");
                s.tail = tail_from_json(so.at("tail"), field);
                m.sequences[name] = std::move(s);
            } else if (type == "proj") {
                ProjSeqSpec s;
                if (so.contains("prefix"))
                    for (const auto& b : so.at("prefix"))
                        s.prefix.push_back(band_from_json(b, field + ".prefix"));
                if (!so.contains("tail")) throw ParseError(field + ".tail: missing");
                for (const auto& b : so.at("tail"))
                    s.tail.push_back(band_from_json(b, field + ".tail"));
                s.tail_periodic = so.value("tail_periodic", false);
                m.proj_sequences[name] = std::move(s);
            } else {
                throw ParseError(field + ".type: must be vec or proj");
            }
        }
    }
    if (o.contains("processes")) {
        for (const auto& [name, po] : o.at("processes").items()) {
            ProcessSpec p;
            const std::string field = "processes." + name;
            if (!po.contains("sequence") || !po.contains("filtration"))
                throw ParseError(field + ": needs sequence and filtration");
            p.sequence = po.at("sequence").get<std::string>();
            p.filtration = po.at("filtration").get<std::string>();
            m.processes[name] = std::move(p);
        }
    }
    if (o.contains("vectors")) {
        for (const auto& [name, vo] : o.at("vectors").items()) {
            std::vector<ExtRat> v;
            for (const auto& c : vo) {
                if (!c.is_string())
                    throw ParseError("vectors." + name + ": entries must be \"p/q\" or \"inf\"");
                v.push_back(ext_rat_parse(c.get<std::string>()));
            }
            m.vectors[name] = std::move(v);
        }
    }
    validate_model(m);
    return m;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_string(buf.str());
}

void save_model(const ModelSpec& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write model file: " + path);
    out << model_to_json_string(m);
}

namespace {

PartitionSpec partition_spec_of(const CondExp<Rat>& t) {
    PartitionSpec p(t.nblocks);
    for (std::size_t i = 0; i < t.dim(); ++i) p[t.block_of[i]].push_back(static_cast<int>(i));
    return p;
}

std::vector<int> band_spec_of(const Band& b) {
    std::vector<int> out;
    for (std::size_t i = 0; i < b.dim(); ++i)
        if (b.contains(i)) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<Rat> rat_vec_of(const LatVec<Rat>& v) { return v; }

} // namespace

ModelSpec generate_model(std::uint64_t seed, const GenBounds& bounds) {
    if (bounds.max_atoms == 0 || bounds.max_chain == 0 || bounds.max_prefix == 0 ||
        bounds.max_period == 0)
        throw DomainError("generate_model: size bounds must be positive");
    Rng rng(mix_seed(seed, 0xA11CE));
    ModelSpec m;
    const AtomicSpace<Rat> sp = gen_space<Rat>(rng, bounds.max_atoms);
    const std::size_t n = sp.size();
    for (std::size_t i = 0; i < n; ++i) m.atoms.push_back("a" + std::to_string(i));
    m.weights = sp.weights;

    const Filtration<Rat> filt = gen_filtration<Rat>(rng, sp, bounds.max_chain);
    FiltrationSpec fs;
    fs.global = partition_spec_of(filt.global);
    for (const auto& t : filt.prefix) fs.chain.push_back(partition_spec_of(t));
    fs.tail = partition_spec_of(filt.tail);
    m.partitions["chain0"] = std::move(fs);

    {
        // one-block chain: always present so the degenerate case is covered
        FiltrationSpec triv;
        triv.global = partition_spec_of(CondExp<Rat>::trivial(sp));
        triv.tail = triv.global;
        m.partitions["trivial"] = std::move(triv);
    }

    auto vecseq_spec = [&](const VecSeq<Rat>& xs) {
        VecSeqSpec s;
        for (const auto& v : xs.prefix) s.prefix.push_back(rat_vec_of(v));
        switch (xs.tail.kind) {
            case TailRule<Rat>::Kind::Zero: s.tail.kind = "zero"; break;
            case TailRule<Rat>::Kind::Constant:
                s.tail.kind = "constant";
                s.tail.values.push_back(rat_vec_of(xs.tail.vs[0]));
                break;
            case TailRule<Rat>::Kind::Periodic:
                s.tail.kind = "periodic";
                for (const auto& v : xs.tail.vs) s.tail.values.push_back(rat_vec_of(v));
                break;
            case TailRule<Rat>::Kind::Geometric:
                s.tail.kind = "geometric";
                s.tail.values.push_back(rat_vec_of(xs.tail.vs[0]));
                s.tail.ratio = xs.tail.ratio;
                break;
        }
        return s;
    };

    m.sequences["seq0"] = vecseq_spec(gen_vecseq<Rat>(rng, n, false, bounds.max_prefix));
    m.sequences["seq1"] = vecseq_spec(gen_vecseq<Rat>(rng, n, true, bounds.max_prefix));

    {
        const ProjSeq ps = gen_projseq(rng, n, bounds.max_prefix);
        ProjSeqSpec s;
        for (const auto& b : ps.prefix) s.prefix.push_back(band_spec_of(b));
        for (const auto& b : ps.tail) s.tail.push_back(band_spec_of(b));
        s.tail_periodic = ps.tail_periodic;
        m.proj_sequences["proj0"] = std::move(s);
    }

    m.sequences["mart0"] = vecseq_spec(gen_martingale<Rat>(rng, filt).xs);
    m.processes["proc0"] = ProcessSpec{"mart0", "chain0"};

    {
        std::vector<ExtRat> v(n);
        for (auto& c : v) {
            if (rng.chance(25))
                c.inf = true;
            else
                c.v = gen_scalar<Rat>(rng);
        }
        m.vectors["x"] = std::move(v);
        std::vector<ExtRat> w(n);
        for (auto& c : w) c.v = gen_scalar<Rat>(rng, 0, 8);
        m.vectors["y"] = std::move(w);
    }

    validate_model(m);
    return m;
}

} // namespace supcone
