import numpy as np
import pytest

from dashgrid import (
    DashRecord,
    FormatError,
    GridModel,
    ReferenceTile,
    ValidationError,
    export_csv,
    export_dxf,
    export_json,
    read_csv_records,
    reconstruct_mask,
    scan_locations,
    stamp_tile,
)

from oracles import paint_records, parse_dxf

WORKED_GRID = GridModel(
    row_positions=(11.0, 40.5),
    col_positions=(11.0, 31.0, 50.0),
    avg_col_spacing=20.0,
    tile_width=2,
    tile_height=2,
)


def _tile(h=2, w=2):
    return ReferenceTile(np.ones((h, w), dtype=bool))


# --------------------------------------------------------------- stamping


def test_stamp_on_blank_adds_on_count_pixels():
    rng = np.random.default_rng(40)
    tile_mask = rng.random((3, 5)) < 0.6
    tile_mask[0, 0] = True
    tile = ReferenceTile(tile_mask)
    canvas = np.zeros((10, 10), dtype=bool)
    out = stamp_tile(canvas, tile, (4, 2))
    assert int(out.sum()) == tile.on_count
    assert not canvas.any()  # input untouched


def test_stamp_is_idempotent_or():
    tile = _tile()
    canvas = np.zeros((6, 6), dtype=bool)
    once = stamp_tile(canvas, tile, (2, 3))
    twice = stamp_tile(once, tile, (2, 3))
    assert np.array_equal(once, twice)


def test_stamp_clips_at_borders():
    tile = _tile()
    canvas = np.zeros((4, 4), dtype=bool)
    out = stamp_tile(canvas, tile, (-1, 0))
    assert int(out.sum()) == 2  # only the in-bounds 1x2 sliver
    assert out[0, 0] and out[1, 0]


def test_stamp_fully_outside_paints_nothing():
    tile = _tile()
    canvas = np.zeros((4, 4), dtype=bool)
    assert not stamp_tile(canvas, tile, (10, 10)).any()


def test_stamp_preserves_pixels_outside_the_window():
    canvas = np.zeros((6, 6), dtype=bool)
    canvas[5, 5] = True
    out = stamp_tile(canvas, _tile(), (0, 0))
    assert out[5, 5]


# ----------------------------------------------------------- reconstruct


def test_reconstruct_worked_example():
    mask, records = reconstruct_mask(WORKED_GRID, _tile(), 64, 64)
    assert [(r.id, r.x, r.y) for r in records] == [
        (0, 11, 11), (1, 31, 11), (2, 50, 11),
        (3, 11, 41), (4, 31, 41), (5, 50, 41),
    ]
    assert all((r.width, r.height) == (2, 2) for r in records)
    assert int(mask.sum()) == 24


def test_reconstruct_empty_grid():
    grid = GridModel((), (), 0.0, 2, 2)
    mask, records = reconstruct_mask(grid, _tile(), 16, 16)
    assert not mask.any()
    assert records == []


def test_reconstruct_round_half_up():
    grid = GridModel((2.5,), (3.49,), 1.0, 2, 2)
    _, records = reconstruct_mask(grid, _tile(), 16, 16)
    assert (records[0].x, records[0].y) == (3, 3)


def test_reconstruct_record_count_is_rows_times_cols():
    grid = GridModel((1.0, 8.0, 15.0), (2.0, 9.0), 7.0, 2, 2)
    _, records = reconstruct_mask(grid, _tile(), 32, 32)
    assert len(records) == 6
    assert [r.id for r in records] == list(range(6))


def test_reconstruct_overlapping_stamps_match_or_oracle():
    grid = GridModel((4.0, 5.0), (4.0, 5.0, 6.0), 1.0, 3, 3)
    tile = _tile(3, 3)
    mask, records = reconstruct_mask(grid, tile, 16, 16)
    assert len(records) == 6
    assert int(mask.sum()) < 6 * tile.on_count
    expected = paint_records([(r.x, r.y) for r in records], tile.mask, 16, 16)
    assert mask.tolist() == expected


def test_reconstruct_matches_paint_oracle_with_clipping():
    grid = GridModel((14.0,), (14.5,), 1.0, 4, 4)
    tile = _tile(4, 4)
    mask, records = reconstruct_mask(grid, tile, 16, 16)
    expected = paint_records([(r.x, r.y) for r in records], tile.mask, 16, 16)
    assert mask.tolist() == expected


def test_reconstruct_rejects_canvas_smaller_than_tile():
    with pytest.raises(ValidationError, match="smaller"):
        reconstruct_mask(WORKED_GRID, _tile(4, 4), 3, 8)


def test_reconstructed_regions_contain_the_tile_pattern():
    rng = np.random.default_rng(41)
    tile_mask = rng.random((3, 6)) < 0.5
    tile_mask[1, 1] = True
    tile = ReferenceTile(tile_mask)
    grid = GridModel((5.0, 20.0), (4.0, 30.0), 26.0, 6, 3)
    mask, records = reconstruct_mask(grid, tile, 48, 32)
    for r in records:
        window = mask[r.y : r.y + 3, r.x : r.x + 6]
        assert np.array_equal(window, tile_mask)


def test_rescanning_reconstruction_hits_every_record_origin():
    rng = np.random.default_rng(42)
    tile_mask = rng.random((4, 7)) < 0.5
    tile_mask[0, 0] = True
    tile = ReferenceTile(tile_mask)
    grid = GridModel((6.0, 26.0), (5.0, 25.0, 45.0), 20.0, 7, 4)
    mask, records = reconstruct_mask(grid, tile, 64, 40)
    hit_origins = {(h.x, h.y) for h in scan_locations(mask, tile, 0.999)}
    for r in records:
        assert (r.x, r.y) in hit_origins


def test_reconstruction_is_deterministic():
    a_mask, a_rec = reconstruct_mask(WORKED_GRID, _tile(), 64, 64)
    b_mask, b_rec = reconstruct_mask(WORKED_GRID, _tile(), 64, 64)
    assert np.array_equal(a_mask, b_mask)
    assert a_rec == b_rec
    assert export_csv(a_rec) == export_csv(b_rec)
    assert export_dxf(a_rec, 64) == export_dxf(b_rec, 64)


# ------------------------------------------------------------------- CSV


def test_csv_empty_is_header_only():
    assert export_csv([]) == b"id,x,y,width,height\n"


def test_csv_single_record():
    data = export_csv([DashRecord(0, 11, 11, 24, 8)])
    assert data == b"id,x,y,width,height\n0,11,11,24,8\n"


def test_csv_six_records_is_seven_lines():
    _, records = reconstruct_mask(WORKED_GRID, _tile(), 64, 64)
    text = export_csv(records).decode("utf-8")
    assert len(text.splitlines()) == 7
    assert not any(line != line.rstrip() for line in text.splitlines())


def test_csv_round_trip():
    _, records = reconstruct_mask(WORKED_GRID, _tile(), 64, 64)
    assert read_csv_records(export_csv(records)) == records


def test_csv_reader_rejects_bad_header_and_rows():
    with pytest.raises(FormatError, match="header"):
        read_csv_records(b"x,y\n1,2\n")
    with pytest.raises(FormatError, match="line 2"):
        read_csv_records(b"id,x,y,width,height\n0,1,2\n")
    with pytest.raises(FormatError, match="line 2"):
        read_csv_records(b"id,x,y,width,height\n0,1,2,three,4\n")


# ------------------------------------------------------------------ JSON


def test_json_mirrors_record_fields():
    import json

    records = [DashRecord(0, 3, 4, 8, 2), DashRecord(1, 30, 4, 8, 2)]
    doc = json.loads(export_json(records).decode("utf-8"))
    assert doc == [
        {"id": 0, "x": 3, "y": 4, "width": 8, "height": 2},
        {"id": 1, "x": 30, "y": 4, "width": 8, "height": 2},
    ]


# ------------------------------------------------------------------- DXF


def test_dxf_empty_document_parses():
    entities = parse_dxf(export_dxf([], 64))
    assert entities == []


def test_dxf_single_record_is_closed_four_vertex_polyline():
    entities = parse_dxf(export_dxf([DashRecord(0, 2, 3, 4, 5)], 32))
    assert len(entities) == 1
    e = entities[0]
    assert e["closed"] and e["vertex_count"] == 4
    assert len(e["vertices"]) == 4


def test_dxf_axis_flip_example():
    # raster y grows down, CAD y grows up: record (11, 11) in a 64-tall
    # image puts its top edge at CAD y = 53
    entities = parse_dxf(export_dxf([DashRecord(0, 11, 11, 24, 8)], 64))
    assert entities[0]["vertices"] == [
        (11.0, 53.0),
        (35.0, 53.0),
        (35.0, 45.0),
        (11.0, 45.0),
    ]


def test_dxf_three_records_three_polylines():
    records = [
        DashRecord(0, 11, 11, 24, 8),
        DashRecord(1, 50, 11, 24, 8),
        DashRecord(2, 11, 40, 24, 8),
    ]
    entities = parse_dxf(export_dxf(records, 64))
    assert len(entities) == 3
    assert all(e["closed"] and e["vertex_count"] == 4 for e in entities)
