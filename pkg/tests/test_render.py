import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from horonecklace.document import ConfigDocument
from horonecklace.family import generate_family
from horonecklace.necklace import EyePair
from horonecklace.render import RenderOptions, render_svg

GOLDEN = Path(__file__).parent / "golden"
SVG = "{http://www.w3.org/2000/svg}"


def family_doc(theta):
    return ConfigDocument.from_config(*generate_family(theta), label="family", theta=theta)


@pytest.mark.parametrize("name, theta", [("hexagonal.svg", math.pi / 3), ("theta_half_pi.svg", math.pi / 2)])
def test_golden(name, theta):
    assert render_svg(family_doc(theta)) == (GOLDEN / name).read_text()


def test_well_formed_and_counts():
    root = ET.fromstring(render_svg(family_doc(1.5), RenderOptions(draw_strip=True, labels=True)))
    assert root.tag == SVG + "svg"
    assert len(root.findall(f".//{SVG}circle")) == 10
    assert len(root.findall(f".//{SVG}line")) == 8 + 3
    assert len(root.findall(f".//{SVG}text")) == 10
    assert root.find(f"{SVG}title").text == "family"


def test_no_beads():
    doc = ConfigDocument.from_config(None, EyePair.standard(1.5))
    root = ET.fromstring(render_svg(doc))
    assert len(root.findall(f".//{SVG}circle")) == 2
    assert root.findall(f".//{SVG}line") == []


def test_self_contained():
    text = render_svg(family_doc(1.5), RenderOptions(draw_strip=True, labels=True))
    assert "href" not in text and "<script" not in text and "<style" not in text


def test_deterministic_and_options():
    doc = family_doc(1.5)
    assert render_svg(doc) == render_svg(doc)
    assert "<line" not in render_svg(doc, RenderOptions(draw_ties=False))
    with pytest.raises(ValueError):
        RenderOptions(scale=0)


def test_label_escaped():
    doc = family_doc(1.5)
    doc.metadata["label"] = "a<b & c"
    assert ET.fromstring(render_svg(doc)).find(f"{SVG}title").text == "a<b & c"
