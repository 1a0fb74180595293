# ffframes package
