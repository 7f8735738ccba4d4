from .file_utils import *
