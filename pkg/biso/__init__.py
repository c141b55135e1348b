import os

from biso.utils.config import config

data_dir = os.path.join(os.path.dirname(__file__), "data")
channels_dir = os.path.join(data_dir, "channels")

__all__ = ["config", "data_dir", "channels_dir"]
