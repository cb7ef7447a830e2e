import logging
import os
import tempfile
import unittest
from unittest import mock

from ideal_duality.config import Config
from ideal_duality.logger import setup_logger


class TestSetupLogger(unittest.TestCase):
    def tearDown(self):
        logger = logging.getLogger("ideal_duality")
        for handler in list(logger.handlers):
            handler.close()
            logger.removeHandler(handler)

    def test_console_handler_is_not_duplicated(self):
        with mock.patch.object(Config, "LOG_FOLDER", ""):
            setup_logger("resolve_a.ring", "DEBUG")
            logger = setup_logger("resolve_a.ring", "INFO")
        streams = [h for h in logger.handlers if type(h) is logging.StreamHandler]
        self.assertEqual(len(streams), 1)
        self.assertEqual(logger.level, logging.INFO)
        self.assertFalse(logger.propagate)

    def test_log_file_per_run(self):
        with tempfile.TemporaryDirectory() as folder:
            target = os.path.join(folder, "log")
            with mock.patch.object(Config, "LOG_FOLDER", target):
                logger = setup_logger("purity_two_planes.ring", logging.WARNING)
                logger.warning("codimension check")
                for handler in logger.handlers:
                    handler.flush()
            files = os.listdir(target)
            self.assertEqual(len(files), 1)
            self.assertTrue(files[0].startswith("ideal_duality_purity_two_planes_ring_"))
            with open(os.path.join(target, files[0]), encoding="utf-8") as f:
                self.assertIn("ideal_duality - WARNING - codimension check", f.read())
            self.tearDown()


if __name__ == '__main__':
    unittest.main()
