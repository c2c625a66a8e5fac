"""Write SVG figures of both reference pairs: frame, F_K and a depth-3 tiling by F."""
import pathlib
import sys

from fuchsian_doubles.cli import Pipeline
from fuchsian_doubles.fixtures import FIXTURES
from fuchsian_doubles.render import render_svg

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
out.mkdir(exist_ok=True)
for name, make in FIXTURES.items():
    P = Pipeline(*make())
    for depth in (0, 3):
        path = out / f"{name.lower()}_depth{depth}.svg"
        path.write_bytes(render_svg(P.scene(depth)))
        print("wrote", path)
