from prompt_toolkit.styles import Style

style = Style.from_dict(
    {
        "title": "bold",
        "key": "bold",
        "value": "",
        "interval": "ansicyan",
        "certified": "bold ansigreen",
        "holds": "ansigreen",
        "fails": "bold ansired",
        "incomplete": "ansiyellow",
        "torsion": "ansimagenta",
        "error": "bold ansired",
        "progress": "ansiblue",
    }
)
