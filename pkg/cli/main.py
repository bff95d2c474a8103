import click

import crtool

from .commands.check import check
from .commands.find_umbilics import find_umbilics
from .commands.scaling import scaling
from .commands.scan import scan
from .commands.verify import verify


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """CR umbilical obstruction toolkit."""


for command in (check, scan, verify, find_umbilics, scaling):
    cli.add_command(command)


def main(args=None):
    crtool.setup()
    cli.main(args=args, prog_name="crtool")
