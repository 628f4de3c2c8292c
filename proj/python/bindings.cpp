#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "zsq/search.hpp"
#include "zsq/subsums.hpp"

namespace py = pybind11;
using namespace zsq;

namespace {

using Pair = std::pair<int, int>;

Element elem(const Pair& p) { return Element{p.first, p.second}; }
Pair pair(const Element& e) { return {e.a, e.b}; }

std::vector<Pair> pairs(const std::vector<Element>& elems) {
    std::vector<Pair> out;
    out.reserve(elems.size());
    for (const Element& e : elems) out.push_back(pair(e));
    return out;
}

std::vector<std::string> seq_strings(const std::vector<Sequence>& seqs) {
    std::vector<std::string> out;
    out.reserve(seqs.size());
    for (const Sequence& s : seqs) out.push_back(s.str());
    return out;
}

std::string decompose_json(const Sequence& S, int m, int n, int k_m, int k_n) {
    nlohmann::json out;
    DecomposeResult result = block_decompose(S, m, n, k_m, k_n);
    out["ok"] = result.ok();
    if (!result.ok()) {
        nlohmann::json extracted = nlohmann::json::array();
        for (const auto& w : result.failure->extracted) extracted.push_back(w.str());
        out["failure"] = {{"reason", result.failure->reason},
                          {"extracted", extracted},
                          {"remainder", result.failure->remainder
                                            ? nlohmann::json(result.failure->remainder->str())
                                            : nlohmann::json(nullptr)}};
        return out.dump();
    }
    const BlockDecomposition& d = *result.value;
    out["decomposition"] = to_json(d);
    out["verification"] = to_json(verify_decomposition(d));
    if (d.k_n >= 2 || d.assoc_index) {
        out["associated"] = to_json(associated_sequence(d));
    } else {
        out["associated"] = nullptr;
    }
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "zero-sum sequence computations over C_n + C_n";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ArgumentError>(m, "ArgumentError", base);
    py::register_exception<FeasibilityError>(m, "FeasibilityError", base);
    py::register_exception<ContextMismatchError>(m, "ContextMismatchError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<SubsequenceError>(m, "SubsequenceError", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<InternalError>(m, "InternalError", base);

    py::class_<GroupCtx>(m, "GroupCtx")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("modulus", &GroupCtx::modulus)
        .def_property_readonly("order", &GroupCtx::order)
        .def("add", [](const GroupCtx& c, Pair x, Pair y) { return pair(c.add(elem(x), elem(y))); })
        .def("neg", [](const GroupCtx& c, Pair x) { return pair(c.neg(elem(x))); })
        .def("scalar", [](const GroupCtx& c, long long k, Pair x) { return pair(c.scalar(k, elem(x))); })
        .def("__repr__",
             [](const GroupCtx& c) { return "GroupCtx(" + std::to_string(c.modulus()) + ")"; });

    py::class_<Sequence>(m, "Sequence")
        .def(py::init<const GroupCtx&>(), py::arg("ctx"))
        .def_static("parse", &Sequence::parse, py::arg("ctx"), py::arg("text"))
        .def("str", &Sequence::str)
        .def("__str__", &Sequence::str)
        .def("__repr__", [](const Sequence& s) { return "Sequence(\"" + s.str() + "\")"; })
        .def("__len__", &Sequence::length)
        .def("__eq__", [](const Sequence& a, const Sequence& b) { return a == b; })
        .def_property_readonly("length", &Sequence::length)
        .def_property_readonly("height", &Sequence::height)
        .def_property_readonly("support_size", &Sequence::support_size)
        .def("support", [](const Sequence& s) { return pairs(s.support()); })
        .def("sigma", [](const Sequence& s) { return pair(s.sigma()); })
        .def("multiplicity", [](const Sequence& s, Pair g) { return s.multiplicity(elem(g)); })
        .def("concat", py::overload_cast<const Sequence&>(&Sequence::concat, py::const_))
        .def("concat_term",
             [](const Sequence& s, Pair g, int count) { return s.concat(elem(g), count); },
             py::arg("g"), py::arg("count") = 1)
        .def("remove", py::overload_cast<const Sequence&>(&Sequence::remove, py::const_))
        .def("remove_term",
             [](const Sequence& s, Pair g, int count) { return s.remove(elem(g), count); },
             py::arg("g"), py::arg("count") = 1);

    py::class_<SearchLimits>(m, "Limits")
        .def(py::init<>())
        .def_readwrite("exhaustive_max_n", &SearchLimits::exhaustive_max_n)
        .def_readwrite("aut_max_n", &SearchLimits::aut_max_n)
        .def_readwrite("mult_exhaustive_max_mn", &SearchLimits::mult_exhaustive_max_mn)
        .def_readwrite("fixedprop_max_n", &SearchLimits::fixedprop_max_n)
        .def_readwrite("hamidoune_max_n", &SearchLimits::hamidoune_max_n)
        .def_readwrite("threads", &SearchLimits::threads);

    m.def("is_basis",
          [](const GroupCtx& c, Pair e1, Pair e2) { return is_basis(c, elem(e1), elem(e2)); });
    m.def("automorphism_count",
          [](const GroupCtx& c) { return enumerate_automorphisms(c).size(); });

    m.def("stats", [](const Sequence& s) {
        SequenceStats st = stats(s);
        py::dict out;
        out["length"] = st.length;
        out["height"] = st.height;
        out["support"] = st.support;
        out["sigma"] = pair(st.sigma);
        return out;
    });

    m.def("sigma_le", [](const Sequence& s, int ell) { return pairs(sigma_le(s, ell)); });
    m.def("has_zero_sum_le", &has_zero_sum_le, py::arg("seq"), py::arg("ell"));
    m.def("find_zero_sum_le",
          [](const Sequence& s, int ell, bool shortest) {
              return find_zero_sum_le(s, ell, shortest ? WitnessMode::Shortest : WitnessMode::Any);
          },
          py::arg("seq"), py::arg("ell"), py::arg("shortest") = true);
    m.def("zero_sum_classify",
          [](const Sequence& s) { return to_string(zero_sum_classify(s)); });

    m.def("has_property_a", [](const Sequence& s) -> std::optional<std::pair<Pair, Pair>> {
        auto basis = has_property_A(s);
        if (!basis) return std::nullopt;
        return std::make_pair(pair(basis->first), pair(basis->second));
    });
    m.def("has_property_b", [](const Sequence& s) {
        PropertyB b = has_property_B(s);
        py::dict out;
        out["holds"] = b.holds;
        out["height_exceeds"] = b.height_exceeds;
        return out;
    });
    m.def("has_property_c", &has_property_C);
    m.def("match_conjecture_json",
          [](const Sequence& s, int k) { return to_json(match_conjecture(s, k)).dump(); });
    m.def("canonicalize", [](const Sequence& s) { return canonicalize(s); });
    m.def("is_canonical", [](const Sequence& s) { return is_canonical(s); });

    m.def("construct_conjectured",
          [](const GroupCtx& ctx, int k, int item, std::pair<Pair, Pair> basis,
             const std::vector<int>& xs, int x, std::optional<Pair> removed) {
              ConjectureParams params;
              params.basis = {elem(basis.first), elem(basis.second)};
              params.xs = xs;
              params.x = x;
              if (removed) params.removed = elem(*removed);
              return construct_conjectured(ctx, k, item, params);
          },
          py::arg("ctx"), py::arg("k"), py::arg("item"),
          py::arg("basis") = std::make_pair(Pair{1, 0}, Pair{0, 1}),
          py::arg("xs") = std::vector<int>{}, py::arg("x") = 1,
          py::arg("removed") = std::nullopt);

    m.def("is_good_term", [](const Sequence& s, int multiplier, Pair g) {
        return is_good_term(s, MulHom(s.ctx(), multiplier), elem(g));
    });
    m.def("block_decompose_json", &decompose_json, py::arg("seq"), py::arg("m"), py::arg("n"),
          py::arg("k_m"), py::arg("k_n"));

    m.def("compute_davenport",
          [](int n, const SearchLimits& l) { return compute_davenport(n, l); }, py::arg("n"),
          py::arg("limits") = SearchLimits());
    m.def("compute_s_le",
          [](int n, int ell, const SearchLimits& l) { return compute_s_le(n, ell, l); },
          py::arg("n"), py::arg("ell"), py::arg("limits") = SearchLimits());
    m.def("enumerate_extremal",
          [](int n, int k, const SearchLimits& l) { return seq_strings(enumerate_extremal(n, k, l)); },
          py::arg("n"), py::arg("k"), py::arg("limits") = SearchLimits());

    m.def("verify_conjecture_json",
          [](int n, int k, const SearchLimits& l) { return verify_conjecture(n, k, l).to_json().dump(); },
          py::arg("n"), py::arg("k"), py::arg("limits") = SearchLimits());
    m.def("verify_multiplicative_json",
          [](int m_, int n, int k_m, int k_n, const SearchLimits& l) {
              return verify_multiplicative(m_, n, k_m, k_n, l).to_json().dump();
          },
          py::arg("m"), py::arg("n"), py::arg("k_m"), py::arg("k_n"),
          py::arg("limits") = SearchLimits());
    m.def("verify_hamidoune_json",
          [](int n, int trials, std::uint64_t seed, const SearchLimits& l) {
              return verify_hamidoune(n, trials, seed, l).to_json().dump();
          },
          py::arg("n"), py::arg("trials") = 10000, py::arg("seed") = 0,
          py::arg("limits") = SearchLimits());
    m.def("verify_fixedprop_json",
          [](int n, int s, const SearchLimits& l) { return verify_fixedprop(n, s, l).to_json().dump(); },
          py::arg("n"), py::arg("s"), py::arg("limits") = SearchLimits());
    m.def("round_trip_lemmas_json",
          [](int n, int k, const SearchLimits& l) { return round_trip_lemmas(n, k, l).to_json().dump(); },
          py::arg("n"), py::arg("k"), py::arg("limits") = SearchLimits());

#ifdef ZSQ_VERSION
    m.attr("__version__") = ZSQ_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
