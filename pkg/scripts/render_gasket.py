"""Write the UC(4) gasket as SVG and CSV side by side."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from coxlat.limit_set import circles_to_csv, circles_to_svg, gasket_circles


@dataclass
class RenderConfig:
    depth: int = 6
    out_dir: Path = Path("out")
    stem: str = "gasket"


def render(cfg: RenderConfig) -> tuple[Path, Path]:
    circles = gasket_circles(cfg.depth)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    svg = cfg.out_dir / f"{cfg.stem}_d{cfg.depth}.svg"
    csv = cfg.out_dir / f"{cfg.stem}_d{cfg.depth}.csv"
    svg.write_text(circles_to_svg(circles))
    csv.write_text(circles_to_csv(circles))
    print(f"{len(circles)} circles -> {svg}, {csv}")
    return svg, csv


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--depth", type=int, default=RenderConfig.depth)
    p.add_argument("--out-dir", type=Path, default=RenderConfig.out_dir)
    a = p.parse_args()
    render(RenderConfig(depth=a.depth, out_dir=a.out_dir))
