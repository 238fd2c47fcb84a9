# Sweedler measuring-algebra toolkit
