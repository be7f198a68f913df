from dotenv import load_dotenv

from knsuper.cli.app import cli


def main() -> None:
    load_dotenv()
    cli(prog_name="knsuper")


if __name__ == "__main__":
    main()
