from .file_io import FileIO, file_io

__all__ = ["FileIO", "file_io"]
