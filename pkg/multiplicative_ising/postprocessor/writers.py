import io
import os
import json
import tempfile
import pathlib
import pandas as pd


def _format_value(value) -> str:
    return value if isinstance(value, str) else json.dumps(value)


def render_csv(output: dict) -> str:
    """'# key=value' metadata lines followed by the table"""
    lines = [f"# {key}={_format_value(value)}" for key, value in output["metadata"].items()]
    buffer = io.StringIO()
    output["data"].to_csv(buffer, index=False, lineterminator="\n")
    return "\n".join(lines) + ("\n" if lines else "") + buffer.getvalue()


def render_json(output: dict) -> str:
    frame: pd.DataFrame = output["data"]
    payload = {"metadata": output["metadata"], "data": frame.to_dict(orient="records")}
    # numpy scalars -> python scalars
    return json.dumps(payload, indent=2, default=lambda x: x.item()) + "\n"


def render(output: dict, fmt: str = "csv") -> str:
    if fmt == "json":
        return render_json(output)
    if fmt == "csv":
        return render_csv(output)
    raise ValueError(f"Incorrect format '{fmt}'. Available formats are: ['csv', 'json']")


def write_output(output: dict, path: pathlib.Path, fmt: str = "csv") -> pathlib.Path:
    """write to a temporary file next to path, then rename it over path"""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = render(output, fmt)
    handle, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        pathlib.Path(tmp).unlink(missing_ok=True)
        raise
    return path
