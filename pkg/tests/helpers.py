from cfml import cli

# criterion number -> (title, passed, detail); printed by conftest's summary hook
ACCEPTANCE = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (title, bool(passed), detail)


def run_cli(*argv):
    return cli.main([str(a) for a in argv])
