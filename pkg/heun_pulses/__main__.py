# heun_pulses/__main__.py
from heun_pulses.main import main  # re-export
if __name__ == "__main__":
    main()
