import abc
import pandas as pd


class IsingProcessor(abc.ABC):
    """
    one CLI command: process() computes, postprocess() shapes the output

    process() returns {"data": pd.DataFrame, "metadata": dict}
    """

    command: str = ""

    @abc.abstractmethod
    def process(self) -> dict:
        ...

    def postprocess(self, output: dict) -> dict:
        return output

    def run(self) -> dict:
        return self.postprocess(self.process())

    @staticmethod
    def make_output(data: pd.DataFrame, **metadata) -> dict:
        return {"data": data, "metadata": metadata}
