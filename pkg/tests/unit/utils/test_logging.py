"""
Tests for the structlog setup used by the command line.
"""

import json

import structlog

from src.utils.logging import setup_logging


class TestSetupLogging:
    """Test setup_logging functionality"""

    def test_json_lines_on_stderr(self, capsys):
        """Test that events are rendered as JSON on stderr, never stdout"""
        setup_logging("INFO", json_output=True)
        structlog.get_logger().info("Closure computed", added=5)
        captured = capsys.readouterr()
        assert captured.out == ""
        event = json.loads(captured.err.strip().splitlines()[-1])
        assert event["event"] == "Closure computed"
        assert event["added"] == 5
        assert event["level"] == "info"
        assert "timestamp" in event

    def test_level_filtering(self, capsys):
        """Test that events below the configured level are dropped"""
        setup_logging("WARNING", json_output=True)
        logger = structlog.get_logger()
        logger.info("hidden")
        logger.warning("shown")
        err = capsys.readouterr().err
        assert "hidden" not in err
        assert "shown" in err

    def test_console_renderer(self, capsys):
        """Test the human-readable renderer"""
        setup_logging("debug", json_output=False)
        structlog.get_logger().debug("Search level", m=4)
        err = capsys.readouterr().err
        assert "Search level" in err
        assert not err.lstrip().startswith("{")
