import os


def get_cli_path():
    return os.path.expanduser("~/.qadc")


def get_env_path():
    return os.path.expanduser("~/.qadc/.env")


def get_log_path():
    return os.path.expanduser("~/.qadc/qadc.log")
