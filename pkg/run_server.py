#!/usr/bin/env python3
import os
import subprocess
import sys


def main():
    # Run from the repository root so `ringlab` is importable
    os.chdir(os.path.dirname(os.path.abspath(__file__)))

    host = os.getenv("RINGLAB_HOST", "127.0.0.1")
    port = os.getenv("RINGLAB_PORT", "8000")
    print("Starting RingLab API...")
    print(f"  Swagger UI: http://{host}:{port}/docs")

    cmd = [
        sys.executable, "-m", "uvicorn",
        "ringlab.api:app",
        f"--host={host}",
        f"--port={port}",
        "--reload",
    ]

    try:
        subprocess.run(cmd)
    except KeyboardInterrupt:
        print("\nServer stopped.")


if __name__ == "__main__":
    main()
