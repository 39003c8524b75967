from aspcw.dp_classical import dp_classical, has_model_dp
from aspcw.errors import ExpressionError
from aspcw.expression import parse_expression, trivial_expression
from aspcw.generators import gen_random_program
from aspcw.oracle import enumerate_models
from aspcw.program import parse_program
from aspcw.tables import triple_edge_update, triple_relabel, triple_union
from conftest import triple

import pytest


class TestTripleOps:
    def test_union(self):
        assert triple_union(triple({1}, (), ()), triple((), (), {2})) == \
            triple({1}, (), {2})
        assert triple_union(triple((), {1}, ()), triple((), (), {2})) == \
            triple((), {1}, {2})
        q = triple({1}, {2}, {3})
        assert triple_union(q, triple((), (), ())) == q

    def test_relabel(self):
        assert triple_relabel(triple({1}, (), {3}), 3, 2) == \
            triple({1}, (), {2})
        assert triple_relabel(triple((), {1}, {2, 3}), 3, 2) == \
            triple((), {1}, {2})
        q = triple({1}, (), ())
        assert triple_relabel(q, 4, 2) == q
        with pytest.raises(ValueError):
            triple_relabel(q, 2, 2)

    def test_edge_update(self):
        q = triple({1}, (), {2})
        assert triple_edge_update(q, q.t, 1, 2) == triple({1}, (), ())
        assert triple_edge_update(q, q.f, 1, 2) == q
        q2 = triple((), {1}, {2, 3})
        assert triple_edge_update(q2, q2.f, 1, 3) == triple((), {1}, {2})
        with pytest.raises(ValueError):
            triple_edge_update(q, q.t, 2, 2)


class TestTables:
    def test_atom_introduce(self):
        assert dp_classical(parse_expression("a(1,x)")) == {
            triple({1}, (), ()), triple((), {1}, ())}

    def test_rule_introduce(self):
        assert dp_classical(parse_expression("r(2,s)")) == {
            triple((), (), {2})}

    def test_union_of_atom_and_rule(self):
        table = dp_classical(parse_expression("oplus(a(1,x),r(2,r1))"))
        assert table == {triple({1}, (), {2}), triple((), {1}, {2})}

    def test_full_running_example(self, fig2):
        assert dp_classical(fig2) == {
            triple({1, 3}, (), ()),
            triple({3}, {1}, ()),
            triple({1}, {3}, {2}),
            triple((), {1, 3}, {2}),
        }

    def test_alpha_sign_rejected(self):
        expr = parse_expression("eta(alpha,1,2,oplus(a(1,x),r(2,r1)))")
        with pytest.raises(ExpressionError):
            dp_classical(expr)


class TestDecision:
    def test_running_example_has_model(self, fig2):
        assert has_model_dp(fig2) is True

    def test_unsatisfiable_rule(self):
        p = parse_program(".")
        assert has_model_dp(trivial_expression(p)) is False

    def test_node_callback(self, fig2):
        seen = []
        has_model_dp(fig2, on_node=lambda i, op, size: seen.append((i, op, size)))
        assert len(seen) == 11
        assert seen[0] == (1, "a(1,x)", 2)
        assert seen[-1][1] == "eta(n,3,2)"
        assert all(size <= 2 ** (3 * 3) for _, _, size in seen)

    def test_oracle_agreement_sample(self):
        for seed in range(40):
            p = gen_random_program(4, 4, (0.2, 0.2, 0.2), seed)
            expr = trivial_expression(p)
            assert has_model_dp(expr) == bool(enumerate_models(p))


class TestTrace:
    def test_trace_matches_table(self, fig2):
        trace = []
        root = dp_classical(fig2, trace=trace)
        assert len(trace) == 11
        assert set(trace[-1].triples) == root
        assert trace[2].op == "oplus"
        assert set(trace[2].triples) == {
            triple({1}, (), {2}), triple((), {1}, {2})}
