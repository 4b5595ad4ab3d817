"""Box-counting slope of the gasket as depth and sampling density vary.

    python scripts/dimension_experiment.py --depths 5 6 7 8 --spacing 0.00048828125
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from coxlat.limit_set import box_counting_dimension, gasket_circles, gasket_cloud


@dataclass
class DimensionConfig:
    depths: list[int] = field(default_factory=lambda: [5, 6, 7, 8])
    spacing: float = 1 / 2048
    scales: list[float] = field(default_factory=lambda: [2.0 ** -k for k in range(3, 8)])


def run(cfg: DimensionConfig):
    rows = []
    for depth in cfg.depths:
        t0 = time.perf_counter()
        circles = gasket_circles(depth)
        cloud = gasket_cloud(circles, spacing=cfg.spacing)
        bc = box_counting_dimension(cloud, cfg.scales)
        rows.append({"depth": depth, "circles": len(circles), "points": len(cloud),
                     "dimension": round(bc.dimension, 4), "counts": list(bc.counts),
                     "seconds": round(time.perf_counter() - t0, 2)})
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depths", type=int, nargs="+", default=DimensionConfig().depths)
    p.add_argument("--spacing", type=float, default=DimensionConfig.spacing)
    args = p.parse_args()
    cfg = DimensionConfig(depths=args.depths, spacing=args.spacing)
    print(json.dumps({"config": asdict(cfg)}))
    for row in run(cfg):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
