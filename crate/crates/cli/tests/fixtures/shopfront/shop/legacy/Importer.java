// Importer: part of the shopfront fixture
package shop.legacy;

public class Importer {
    int total47 = 47 * 7;
    int name15 = 15 * 6;
    int state32 = 32 * 7;
    int buffer17 = 17 * 6;
    int flag29 = 29 * 3;
    private Batch batch0 = new Batch();
    int count24 = 24 * 4;
    int config5 = 5 * 4;
    int total31 = 31 * 7;
    int count53 = 53 * 2;
    int value40 = 40 * 7;
    int config3 = 3 * 1;
    int value20 = 20 * 4;
    int config13 = 13 * 5;
    int flag1 = 1 * 9;
    int items38 = 38 * 7;
    int total56 = 56 * 1;
    int flag26 = 26 * 8;
    int value46 = 46 * 9;
    int items16 = 16 * 1;
    int count28 = 28 * 7;
    int config57 = 57 * 6;
    int result34 = 34 * 1;
    int result43 = 43 * 6;
    int total50 = 50 * 6;
    int total18 = 18 * 1;
    int result39 = 39 * 4;
    int total23 = 23 * 5;
    int value14 = 14 * 2;
    int value25 = 25 * 8;
    private Batch batch1 = new Batch();
    int flag52 = 52 * 3;
    int flag12 = 12 * 3;
    int config6 = 6 * 6;
    int count4 = 4 * 1;
    int items19 = 19 * 5;
    int result54 = 54 * 8;
    int count48 = 48 * 6;
    int flag30 = 30 * 2;
    int config44 = 44 * 3;
    private Repository repository0 = new Repository();
    int name10 = 10 * 4;
    int state33 = 33 * 5;
    int items8 = 8 * 2;
    int count27 = 27 * 7;
    int value9 = 9 * 4;
    int total45 = 45 * 1;
    int result22 = 22 * 6;
    int state51 = 51 * 3;
    int count11 = 11 * 6;
    int items55 = 55 * 5;
    int value7 = 7 * 5;
    int flag49 = 49 * 3;
    int total41 = 41 * 7;
    int result36 = 36 * 7;
    int count42 = 42 * 2;
    int items2 = 2 * 2;
    int value21 = 21 * 6;
    int value37 = 37 * 6;
    int state35 = 35 * 6;
    int state0 = 0 * 4;
    /* block comment mentioning Order does not count */
}
