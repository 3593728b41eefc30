
from abc import ABC, abstractmethod
from typing import Any


class IAdapter(ABC):

    @abstractmethod
    def read(self, path: str) -> Any:
        """Reads the asset stored under the given fs path.

        Args:
            path (str): Path to read the asset from.

        Returns:
            Any: The read asset.
        """
        pass

    @abstractmethod
    def write(self, asset: Any, path: str, *, override_if_existing: bool = False) -> None:
        """Writes the asset to the given fs path.

        The asset is written to a temporary sibling first and swapped into place.

        Args:
            asset (Any): Asset to write.
            path (str): Path to write the asset to.
            override_if_existing (bool): Replace an existing asset instead of failing.

        Returns:
            None
        """
        pass
