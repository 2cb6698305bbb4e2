import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stec.harness import Segment, _hsv_to_rgb, write_video  # noqa: E402

_ACCEPTANCE = []


@contextmanager
def criterion(number, text):
    """Record one acceptance criterion's outcome for the terminal summary."""
    try:
        yield
    except BaseException:
        _ACCEPTANCE.append((number, "FAIL", text))
        raise
    _ACCEPTANCE.append((number, "PASS", text))


@pytest.fixture
def accept():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")


def solid(color, h=8, w=8):
    return np.broadcast_to(np.array(color, dtype=np.uint8), (h, w, 3)).copy()


EIGHT_SEG_INDICES = [0, 8, 17, 25, 34, 42, 51, 59, 68, 76, 85, 93, 102, 110, 119, 127]


@pytest.fixture(scope="session")
def eight_segment_video(tmp_path_factory):
    """128 frames, eight textured 16-frame shots with distinct hues, mild noise."""
    segs = [
        Segment(
            start=16 * s,
            length=16,
            kind="textured",
            color=_hsv_to_rgb(s / 8, 0.9, 0.8),
            accent=_hsv_to_rgb(s / 8 + 0.5, 0.5, 0.3),
            pattern=s % 3,
        )
        for s in range(8)
    ]
    root = tmp_path_factory.mktemp("eightseg")
    return write_video(root / "v", "eightseg", segs, width=48, height=32, noise=3.0, seed=11)


@pytest.fixture(scope="session")
def orthogonal_video(tmp_path_factory):
    """Eight noiseless solid shots whose colours fall in distinct HSV bins."""
    colors = [
        (255, 0, 0), (0, 255, 0), (0, 0, 255), (255, 255, 0),
        (0, 255, 255), (255, 0, 255), (128, 128, 128), (255, 128, 0),
    ]  # fmt: skip
    segs = [Segment(start=10 * s, length=10, kind="solid", color=c) for s, c in enumerate(colors)]
    root = tmp_path_factory.mktemp("ortho")
    return write_video(root / "v", "ortho", segs, width=16, height=12, noise=0.0)
