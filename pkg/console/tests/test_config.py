from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from console.config import RunConfig
from hopf.scalars import Q, ExactScalar
from Qsu2.exceptions import ConfigurationError


class RunConfigTests(SimpleTestCase):
    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.point, Fraction(1, 2))
        self.assertEqual(config.q_float, 0.5)
        self.assertEqual(config.max_level, 3)
        self.assertEqual(config.cutoff, 32)

    def test_level_is_parsed(self):
        self.assertEqual(RunConfig(max_level="5/2").max_level, Fraction(5, 2))

    def test_invalid_values(self):
        for kwargs in (
            {"backend": "float"},
            {"q": "abc"},
            {"q": "1/0"},
            {"backend": "numeric", "q": "3/2"},
            {"max_level": "1/3"},
            {"max_level": "-1"},
            {"cutoff": 0},
        ):
            with self.subTest(**kwargs), self.assertRaises(ConfigurationError):
                RunConfig(**kwargs)

    def test_exact_backend_accepts_any_point(self):
        self.assertEqual(RunConfig(q="2").point, 2)

    @override_settings(QSU2_Q="1/3", QSU2_CUTOFF=12)
    def test_settings_fill_missing_options(self):
        config = RunConfig.from_options({"q": None, "cutoff": None, "level": "1"})
        self.assertEqual(config.point, Fraction(1, 3))
        self.assertEqual(config.cutoff, 12)
        self.assertEqual(config.max_level, 1)

    def test_render_exact(self):
        payload = RunConfig().render(ExactScalar(Q))
        self.assertEqual(payload["at_q"], "1/2")
        self.assertEqual(payload["numeric"], {"re": 0.5, "im": 0.0})
        self.assertIn("exact", payload)

    def test_render_numeric(self):
        payload = RunConfig(backend="numeric").render(ExactScalar(Q))
        self.assertEqual(list(payload), ["numeric"])
