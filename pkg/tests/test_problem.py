import os
import tempfile
import unittest

from ideal_duality.algebra import format_polynomial
from ideal_duality.exceptions import IneligibleInputError, ProblemParseError
from ideal_duality.problem import format_problem, parse_problem, parse_section, parse_split, read_problem

PARABOLA = """
# A double structure on the parabola.
ring x,y
order: grevlex
ideal: y^2 - 2*x^2*y + x^4   # one generator
split: free=x dependent=y
section: y=x^2
"""

COMPONENTS = """
ring x,y
component: x^2
component.split: ζ=y ω=x
component.section: x=0
component: y
component.split: dependent=y
component.section: y=0
"""


class TestParseProblem(unittest.TestCase):
    def test_parabola(self):
        problem = parse_problem(PARABOLA)
        self.assertEqual(problem.variables, ("x", "y"))
        self.assertEqual(problem.order, "grevlex")
        self.assertEqual([format_polynomial(p) for p in problem.ideal], ["x^4 - 2*x^2*y + y^2"])
        self.assertEqual(problem.split.free, ("x",))
        self.assertEqual(problem.split.dependent, ("y",))
        self.assertEqual(problem.section.as_json(), {"y": "x^2"})
        self.assertEqual(problem.presentation().shape, (1, 1))
        self.assertIsNone(problem.chain_complex())

    def test_components_and_aliases(self):
        problem = parse_problem(COMPONENTS)
        components = problem.primary_components()
        self.assertEqual(len(components), 2)
        self.assertEqual(components[0].split.free, ("y",))
        self.assertEqual(components[0].split.dependent, ("x",))
        self.assertEqual(components[1].split.free, ("x",))
        self.assertEqual(components[1].section.as_json(), {"y": "0"})

    def test_columns_and_differentials(self):
        problem = parse_problem("ring x,y\ncolumn: x, y\ncolumn: y, x\ndifferential: x, y\n"
                                "differential: y; -x\n")
        self.assertEqual(problem.presentation().shape, (2, 2))
        complex_ = problem.chain_complex()
        self.assertEqual(complex_.ranks, [1, 2, 1])
        self.assertTrue(complex_.is_complex())

    def test_round_trip(self):
        for text in (PARABOLA, COMPONENTS, "ring z\nideal: z^3\nsplit: free= dependent=z\n"):
            problem = parse_problem(text)
            self.assertEqual(parse_problem(format_problem(problem)), problem)

    def test_digest_ignores_comments_and_spacing(self):
        first = parse_problem(PARABOLA)
        second = parse_problem(PARABOLA.replace("# one generator", "").replace("order: grevlex", "order:grevlex"))
        self.assertEqual(first.digest(), second.digest())

    def test_with_order(self):
        problem = parse_problem("ring x,y\nideal: x + y^3\n").with_order("lex")
        self.assertEqual(problem.order, "lex")
        self.assertEqual(format_polynomial(problem.ideal[0]), "x + y^3")

    def test_missing_module(self):
        problem = parse_problem("ring x,y\nsplit: dependent=x\n")
        with self.assertRaises(IneligibleInputError):
            problem.presentation()
        with self.assertRaises(IneligibleInputError):
            problem.primary_components()


class TestParseErrors(unittest.TestCase):
    def assertParseError(self, text):
        with self.assertRaises(ProblemParseError):
            parse_problem(text)

    def test_malformed_files(self):
        self.assertParseError("")
        self.assertParseError("ideal: x\n")
        self.assertParseError("ring x,x\nideal: x\n")
        self.assertParseError("ring x\norder: weird\nideal: x\n")
        self.assertParseError("ring x\nideal x\n")
        self.assertParseError("ring x\nideal: x\nideal: x^2\n")
        self.assertParseError("ring x\nideal: w\n")
        self.assertParseError("ring x,y\ncolumn: x, y\ncolumn: x\n")
        self.assertParseError("ring x\ncomponent.split: dependent=x\n")
        self.assertParseError("ring x\nsomething: else\n")

    def test_line_numbers_in_messages(self):
        with self.assertRaises(ProblemParseError) as context:
            parse_problem("ring x\n\nideal: x, w\n")
        self.assertIn("Line 3", str(context.exception))

    def test_split_and_section(self):
        ring = parse_problem("ring x,y\nideal: x\n").ring
        with self.assertRaises(ProblemParseError):
            parse_split("free=x", ring)
        with self.assertRaises(ProblemParseError):
            parse_split("dependent=w", ring)
        with self.assertRaises(ProblemParseError):
            parse_split("free=x dependent=x,y", ring)
        with self.assertRaises(ProblemParseError):
            parse_split("side=x dependent=y", ring)
        self.assertEqual(parse_split("ω=y", ring).free, ("x",))
        with self.assertRaises(ProblemParseError):
            parse_section("y", ring)
        with self.assertRaises(ProblemParseError):
            parse_section("y=x, y=1", ring)

    def test_read_problem(self):
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "parabola.ring")
            with open(path, "w", encoding="utf-8") as f:
                f.write(PARABOLA)
            problem, raw = read_problem(path)
            self.assertEqual(raw, PARABOLA)
            self.assertEqual(problem.variables, ("x", "y"))
            with self.assertRaises(ProblemParseError):
                read_problem(os.path.join(folder, "missing.ring"))


if __name__ == '__main__':
    unittest.main()
