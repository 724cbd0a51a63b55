"""Shared builders for synthetic dataset files.

The renderer consumes CSV only, so tests fabricate small tables with the
standard headers instead of running the simulator.
"""

import numpy as np
import pytest


def write_csv(path, header, columns):
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(f"{value:.6g}" for value in row) + "\n")
    return str(path)


def trajectory_csv(path, points=40):
    """A plausible pair of antipodal Bloch trajectories."""
    t = np.linspace(0.0, 6.0, points)
    theta = 0.3 + 0.1 * t
    phi = 2.0 * t
    shrink = np.exp(-t / 8.0)
    v1 = np.stack([shrink * np.sin(theta) * np.cos(phi),
                   shrink * np.sin(theta) * np.sin(phi),
                   shrink * np.cos(theta)])
    v2 = -0.8 * v1
    len1 = np.linalg.norm(v1, axis=0)
    len2 = np.linalg.norm(v2, axis=0)
    angle = np.full_like(t, np.pi)
    header = ["t", "v1x", "v1y", "v1z", "v2x", "v2y", "v2z",
              "angle", "len1", "len2"]
    return write_csv(path, header, [t, *v1, *v2, angle, len1, len2])


def angle_csv(path, scale=1.0, points=40):
    t = np.linspace(0.0, 6.0, points)
    return write_csv(path, ["t", "D_B"],
                     [t, scale * np.abs(np.sin(t)) * np.exp(-t / 3.0)])


def sensitivity_csv(path, points=40):
    t = np.linspace(0.0, 6.0, points)
    f_qc = 1.0 + t * t * np.exp(-t / 4.0)
    return write_csv(path, ["t", "f_qc", "f_product", "f_product_x2"],
                     [t, f_qc, 0.4 * f_qc, 0.8 * f_qc])


def derivative_csv(path, points=40):
    t = np.linspace(0.0, 6.0, points)
    d_f = np.cos(t) * np.exp(-t / 5.0)
    agree = (np.arange(points) % 2).astype(float)
    return write_csv(path, ["t", "dF_dt", "dDB_dt", "sign_agree"],
                     [t, d_f, 0.5 * d_f, agree])


@pytest.fixture
def dataset_dir(tmp_path):
    """A directory holding one of each standard dataset file."""
    trajectory_csv(tmp_path / "fig1a.csv")
    trajectory_csv(tmp_path / "fig1b.csv")
    angle_csv(tmp_path / "fig2_eps2_T1.csv")
    angle_csv(tmp_path / "fig2_eps6_T1.csv", scale=0.5)
    sensitivity_csv(tmp_path / "fig3_eps2_T1.csv")
    derivative_csv(tmp_path / "fig4.csv")
    return tmp_path
