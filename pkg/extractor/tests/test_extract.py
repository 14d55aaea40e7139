import json

import numpy as np
import pytest

from audiobertscore_extract import (
    ExtractorSpec,
    LayerInvalid,
    ModelLoadError,
    extract,
    load_model,
)
from audiobertscore_extract.cli import main
from wav_support import write_wav


class TestExtract:
    def test_shape_contract(self, tmp_path, tone_wavs):
        spec = ExtractorSpec("melproj", "3", tmp_path / "emb")
        result = extract(spec, tone_wavs)
        assert result.ok and len(result.written) == 4
        assert result.layer_dir == tmp_path / "emb" / "melproj" / "layer3"
        for path in result.written:
            arr = np.load(path)
            assert arr.ndim == 2 and arr.shape[0] > 1 and arr.shape[1] == 64
            assert arr.dtype == np.float32

    def test_deterministic_across_runs(self, tmp_path, tone_wavs):
        blobs = []
        for run in ("one", "two"):
            out = tmp_path / run
            result = extract(ExtractorSpec("melproj", "5", out), tone_wavs)
            files = sorted(result.layer_dir.iterdir())
            blobs.append(b"".join(p.read_bytes() for p in files))
        assert blobs[0] == blobs[1]

    def test_layers_differ(self, tmp_path, tone_wavs):
        a = extract(ExtractorSpec("melproj", "1", tmp_path / "e"), tone_wavs[:1])
        b = extract(ExtractorSpec("melproj", "2", tmp_path / "e"), tone_wavs[:1])
        assert not np.array_equal(np.load(a.written[0]), np.load(b.written[0]))

    def test_local_global_concat_dims(self, tmp_path, tone_wavs):
        dims = {}
        for tag in ("local", "global", "local+global"):
            result = extract(ExtractorSpec("melpool", tag, tmp_path / "e"), tone_wavs[:1])
            dims[tag] = np.load(result.written[0]).shape[1]
        assert dims["local+global"] == dims["local"] + dims["global"]

    def test_metadata_sidecar(self, tmp_path, tone_wavs):
        result = extract(ExtractorSpec("melproj", "7", tmp_path / "e"), tone_wavs)
        lines = (result.layer_dir / "metadata.jsonl").read_text().splitlines()
        assert len(lines) == 4
        records = [json.loads(line) for line in lines]
        assert [r["clip_id"] for r in records] == sorted(r["clip_id"] for r in records)
        for record in records:
            arr = np.load(result.layer_dir / record["path"])
            assert (record["L"], record["D"]) == arr.shape
            assert record["model_id"] == "melproj" and record["layer"] == "7"

    def test_invalid_layer(self, tmp_path, tone_wavs):
        with pytest.raises(LayerInvalid):
            extract(ExtractorSpec("melproj", "14", tmp_path / "e"), tone_wavs)
        with pytest.raises(LayerInvalid):
            extract(ExtractorSpec("melpool", "3", tmp_path / "e"), tone_wavs)

    def test_unknown_model(self, tmp_path, tone_wavs):
        with pytest.raises(ModelLoadError):
            extract(ExtractorSpec("nope", "1", tmp_path / "e"), tone_wavs)

    def test_unavailable_adapters_fail_loudly(self):
        for model_id in ("atst-frame", "byola"):
            with pytest.raises(ModelLoadError):
                load_model(model_id)

    def test_per_file_failures_skipped(self, tmp_path, tone_wavs):
        broken = tmp_path / "broken.wav"
        broken.write_bytes(b"not audio at all")
        short = write_wav(tmp_path / "short.wav", [0] * 10)
        result = extract(
            ExtractorSpec("melproj", "2", tmp_path / "e"),
            [tone_wavs[0], broken, short, tone_wavs[1]],
        )
        assert len(result.written) == 2
        assert len(result.failures) == 2
        assert not result.ok


class TestCli:
    def test_exit_codes(self, tmp_path, tone_wavs, capsys):
        out = tmp_path / "emb"
        code = main(
            ["--model", "melproj", "--layer", "1", "--out", str(out)]
            + [str(p) for p in tone_wavs]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out) == {
            "layer_dir": str(out / "melproj" / "layer1"),
            "written": 4,
            "failed": 0,
        }

        broken = tmp_path / "broken.wav"
        broken.write_bytes(b"junk")
        code = main(
            ["--model", "melproj", "--layer", "1", "--out", str(out), str(broken)]
        )
        assert code == 1

        code = main(
            ["--model", "melproj", "--layer", "99", "--out", str(out)]
            + [str(tone_wavs[0])]
        )
        assert code == 2
