import pathlib


class Paths:

    def __init__(self, root_path: pathlib.Path = None) -> None:
        """
        root of the output tree, by default the current working directory
        """
        self.root_path = pathlib.Path.cwd() if root_path is None else pathlib.Path(root_path)

    @staticmethod
    def safe_return(path: pathlib.Path, path_type: str, mkdir: bool) -> pathlib.Path:
        """
        return a path, optionally creating it (directory) or its parent (file) first
        """
        if mkdir:
            if path_type == "file":
                path.parent.mkdir(parents=True, exist_ok=True)
            elif path_type == "directory":
                path.mkdir(parents=True, exist_ok=True)
            else:
                raise ValueError(
                    f"'path_type' has to be either 'file' or 'directory'. "
                    f"Got: {path_type}"
                )
        return path

    def output_path(
        self,
        command: str,
        name: str,
        extension: str = "csv",
        mkdir: bool = False,
    ) -> pathlib.Path:
        """outs/<command>/<name>.<extension>"""
        return self.safe_return(
            path=self.root_path / "outs" / command / f"{name}.{extension}",
            path_type="file",
            mkdir=mkdir,
        )
